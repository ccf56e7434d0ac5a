"""Concrete syntax for .lpod / .crp files.

Grammar sketch (UTF-8, % comments, newline-agnostic):

    statement := [label ":"] head ( ":-" body | ":+" body )? "."
               | ":-" body "."
               | "prefer" "(" label "," label ")" "."          (crp2 only)
    head      := atom | atom ("*" atom)+ | INT "{" atom (";" atom)* "}" INT
    body      := literal ("," literal)*
    literal   := ["not"] atom
    atom      := IDENT | IDENT "(" arg ("," arg)* ")"
    arg       := INT | IDENT

"*" writes ordered disjunction, ":+" the consistency-restoring arrow.
Facts omit the arrow. Labels are only meaningful on cr/ordered rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import Atom, Dialect, Literal, Program, Rule, RuleKind


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__("%d:%d: %s" % (span.line, span.column, message))
        self.message = message
        self.span = span


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>:-|:\+)
  | (?P<num>-?\d+)
  | (?P<ident>[a-zA-Z_][A-Za-z0-9_]*)
  | (?P<punct>[(){};:,.*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # arrow | num | ident | punct | eof
    text: str
    span: SourceSpan


def _tokenize(text: str):
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            span = SourceSpan(pos, pos + 1, line, pos - line_start + 1)
            raise ParseError("unexpected character %r" % text[pos], span)
        kind = m.lastgroup
        tok_text = m.group()
        if kind not in ("ws", "comment"):
            span = SourceSpan(m.start(), m.end(), line, m.start() - line_start + 1)
            tokens.append(_Token(kind, tok_text, span))
        line += tok_text.count("\n")
        if "\n" in tok_text:
            line_start = m.start() + tok_text.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", SourceSpan(len(text), len(text), line, len(text) - line_start + 1)))
    return tokens


class _Parser:
    def __init__(self, text: str, dialect: Dialect):
        self.tokens = _tokenize(text)
        self.i = 0
        self.dialect = dialect

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.next()
        if tok.text != text:
            raise ParseError("expected %r, found %r" % (text, tok.text or "end of input"), tok.span)
        return tok

    def fail(self, message: str) -> None:
        raise ParseError(message, self.peek().span)

    def parse_program(self) -> Program:
        rules = []
        prefers = []
        while self.peek().kind != "eof":
            stmt = self.parse_statement()
            if isinstance(stmt, tuple):
                prefers.append(stmt)
            else:
                rules.append(stmt)
        return Program(dialect=self.dialect, rules=tuple(rules), prefer_facts=tuple(prefers))

    def parse_statement(self):
        label = None
        if self.peek().kind == "ident" and self.peek(1).text == ":":
            label = self.next().text
            self.next()

        tok = self.peek()
        if tok.text == ":-":  # constraint
            self.next()
            body = self.parse_body()
            self.expect(".")
            if label is not None:
                self.fail("constraints cannot carry a label")
            return Rule(kind=RuleKind.REGULAR, head_atoms=(), body=body)

        if tok.kind == "num" or (tok.text == "{"):
            return self.parse_choice_rule(label)

        if tok.kind != "ident":
            self.fail("expected a statement, found %r" % (tok.text or "end of input"))

        first = self.parse_atom()
        if (
            label is None
            and first.predicate == "prefer"
            and len(first.args) == 2
            and self.peek().text == "."
        ):
            if self.dialect is not Dialect.CRP2:
                raise ParseError("prefer facts are only allowed in the crp2 dialect", tok.span)
            self.next()
            a1, a2 = first.args
            if not isinstance(a1, str) or not isinstance(a2, str):
                raise ParseError("prefer arguments must be rule labels", tok.span)
            return (a1, a2)

        heads = [first]
        while self.peek().text == "*":
            self.next()
            heads.append(self.parse_atom())

        arrow = self.peek()
        cr = False
        body = ()
        if arrow.text in (":-", ":+"):
            self.next()
            cr = arrow.text == ":+"
            if cr and self.dialect is not Dialect.CRP2:
                raise ParseError("':+' rules are only allowed in the crp2 dialect", arrow.span)
            if self.peek().text != ".":
                body = self.parse_body()
        self.expect(".")

        if len(heads) > 1:
            kind = RuleKind.ORDERED_CR if cr else RuleKind.ORDERED
        else:
            kind = RuleKind.CR if cr else RuleKind.REGULAR
        if label is not None and kind is RuleKind.REGULAR:
            self.fail("labels are only allowed on cr/ordered rules")
        return Rule(kind=kind, head_atoms=tuple(heads), body=body, label=label)

    def parse_choice_rule(self, label):
        if label is not None:
            self.fail("choice rules cannot carry a label")
        lower_tok = self.next()
        if lower_tok.kind != "num":
            raise ParseError("choice heads need an explicit lower bound", lower_tok.span)
        lower = int(lower_tok.text)
        self.expect("{")
        elems = [self.parse_atom()]
        while self.peek().text == ";":
            self.next()
            elems.append(self.parse_atom())
        self.expect("}")
        upper_tok = self.next()
        if upper_tok.kind != "num":
            raise ParseError("choice heads need an explicit upper bound", upper_tok.span)
        upper = int(upper_tok.text)
        body = ()
        if self.peek().text == ":-":
            self.next()
            if self.peek().text != ".":
                body = self.parse_body()
        self.expect(".")
        return Rule(
            kind=RuleKind.REGULAR,
            head_atoms=tuple(elems),
            body=body,
            choice_bounds=(lower, upper),
        )

    def parse_body(self):
        lits = [self.parse_literal()]
        while self.peek().text == ",":
            self.next()
            lits.append(self.parse_literal())
        return tuple(lits)

    def parse_literal(self) -> Literal:
        negated = False
        if self.peek().kind == "ident" and self.peek().text == "not":
            self.next()
            negated = True
        return Literal(atom=self.parse_atom(), negated=negated)

    def parse_atom(self) -> Atom:
        tok = self.next()
        if tok.kind != "ident" or tok.text == "not":
            raise ParseError("expected an atom, found %r" % (tok.text or "end of input"), tok.span)
        args = ()
        if self.peek().text == "(":
            self.next()
            parts = [self.parse_arg()]
            while self.peek().text == ",":
                self.next()
                parts.append(self.parse_arg())
            self.expect(")")
            args = tuple(parts)
        return Atom(predicate=tok.text, args=args)

    def parse_arg(self):
        tok = self.next()
        if tok.kind == "num":
            return int(tok.text)
        if tok.kind == "ident":
            return tok.text
        raise ParseError("expected a constant argument, found %r" % (tok.text or "end of input"), tok.span)


def parse(text: str, dialect: Dialect) -> Program:
    """Parse source text into a Program; raises ParseError with a span."""
    return _Parser(text, dialect).parse_program()


def render_atom(a: Atom) -> str:
    return str(a)


def render_literal(lit: Literal) -> str:
    return ("not " if lit.negated else "") + render_atom(lit.atom)


def render_rule(r: Rule) -> str:
    body = ", ".join(render_literal(l) for l in r.body)
    label = "%s: " % r.label if r.label is not None else ""
    if r.is_choice:
        lo, up = r.choice_bounds
        head = "%d {%s} %d" % (lo, "; ".join(render_atom(a) for a in r.head_atoms), up)
    elif r.kind in (RuleKind.ORDERED, RuleKind.ORDERED_CR):
        head = " * ".join(render_atom(a) for a in r.head_atoms)
    elif r.head_atoms:
        head = render_atom(r.head_atoms[0])
    else:
        head = ""
    arrow = ":+" if r.kind in (RuleKind.CR, RuleKind.ORDERED_CR) else ":-"
    if not head:
        return ":- %s." % body
    if not body:
        if r.kind in (RuleKind.CR, RuleKind.ORDERED_CR):
            return "%s%s %s." % (label, head, arrow)
        return "%s%s." % (label, head)
    return "%s%s %s %s." % (label, head, arrow, body)


def render(p: Program) -> str:
    """Inverse of parse, up to source spans: parse(render(p), p.dialect) == p."""
    lines = [render_rule(r) for r in p.rules]
    lines.extend("prefer(%s,%s)." % pair for pair in p.prefer_facts)
    return "\n".join(lines) + ("\n" if lines else "")
