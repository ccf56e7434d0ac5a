"""lpodc: compiler and reference solver for logic programs with ordered
disjunction (LPOD) and consistency-restoring programs (CR-Prolog_2)."""

__version__ = "0.1.0"

from .model import (
    AnswerSet,
    Atom,
    Dialect,
    Literal,
    Program,
    Rule,
    RuleKind,
    Term,
    ValidationReport,
    canonicalize,
    validate_program,
)
from .parser import ParseError, SourceSpan, parse, render

__all__ = [
    "AnswerSet",
    "Atom",
    "Dialect",
    "Literal",
    "ParseError",
    "Program",
    "Rule",
    "RuleKind",
    "SourceSpan",
    "Term",
    "ValidationReport",
    "canonicalize",
    "parse",
    "render",
    "validate_program",
    "__version__",
]
