import re
from pathlib import Path

import pytest

from lpodc.model import Dialect, canonicalize
from lpodc.parser import parse

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|:~|:-|!=|<=|>=|\.\.|\S")


def tokens(text: str) -> list:
    """Whitespace- and comment-insensitive token sequence."""
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("%"):
            continue
        out.extend(_TOKEN_RE.findall(line.split("%")[0]))
    return out


def load_program(name: str):
    path = PROGRAMS / name
    dialect = Dialect.CRP2 if name.endswith(".crp") else Dialect.LPOD
    return canonicalize(parse(path.read_text(), dialect))


@pytest.fixture(scope="session")
def pi1():
    return load_program("pi1.lpod")


@pytest.fixture(scope="session")
def pi2():
    return load_program("pi2.lpod")


@pytest.fixture(scope="session")
def pi3():
    return load_program("pi3.crp")


@pytest.fixture(scope="session")
def pi3p():
    return load_program("pi3p.crp")


def atom_names(atoms) -> frozenset:
    return frozenset(str(a) for a in atoms)


def name_sets(collection) -> frozenset:
    return frozenset(atom_names(s) for s in collection)
