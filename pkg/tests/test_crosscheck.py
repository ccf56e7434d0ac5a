import random

import lpodc.crosscheck as crosscheck
from lpodc.crosscheck import (
    CheckResult,
    check_crp,
    check_lpod,
    dump_counterexample,
    shrink_counterexample,
)
from lpodc.model import Dialect, canonicalize
from lpodc.parser import parse
from lpodc.randgen import random_lpod


def test_check_lpod_reports_ok(pi1):
    result = check_lpod(pi1)
    assert result.ok
    assert any("preferred" in line for line in result.lines)
    assert all(line.startswith("OK") for line in result.lines)


def test_check_crp_reports_ok(pi3p):
    result = check_crp(pi3p)
    assert result.ok
    assert any(
        "1 preferred answer sets, oracle == translation" in line for line in result.lines
    )


def test_check_degenerate_lpod():
    p = canonicalize(parse("a :- not b.", Dialect.LPOD))
    result = check_lpod(p)
    assert result.ok
    assert any("translation bypassed" in line for line in result.lines)


def test_shrink_keeps_failing_program_minimal(monkeypatch):
    def fake_check(q, criteria=None, cap=24, parallel=None):
        bad = any(
            any(atom.predicate == "smelly" for atom in r.atoms()) for r in q.rules
        )
        return CheckResult(ok=not bad)

    monkeypatch.setattr(crosscheck, "check_program", fake_check)
    text = "a :- not b.\nb :- not a.\nsmelly.\nc * d :- a.\n"
    p = canonicalize(parse(text, Dialect.LPOD))
    small = shrink_counterexample(p)
    assert len(small.rules) == 1
    assert dump_counterexample(small).strip() == "smelly."


def test_shrink_on_agreeing_program_is_identity(pi1):
    assert shrink_counterexample(pi1) == pi1


def test_random_shrink_never_crashes():
    rng = random.Random(61)
    for _ in range(5):
        p = random_lpod(rng)
        assert shrink_counterexample(p) == p
