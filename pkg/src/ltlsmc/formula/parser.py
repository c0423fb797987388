"""Recursive-descent parser for property text.

Precedence, loosest first: ``||``, ``&&``, ``U``/``W`` (right-associative),
then the prefix operators ``! X F G``.  Atoms are identifiers or comparisons
``var op (var | int)``.
"""

from __future__ import annotations

from pathlib import Path

from ltlsmc.errors import ParseError
from ltlsmc.formula.ast import (
    COMPARISON_OPS,
    FALSE,
    TRUE,
    And,
    Atom,
    Finally,
    Formula,
    Globally,
    Next,
    Not,
    Or,
    Until,
    WeakUntil,
)
from ltlsmc.formula.lexer import Token, TokenStream, tokenize

KEYWORDS = frozenset({"true", "false", "X", "F", "G", "U", "W"})
_PREFIX = {"!": Not, "X": Next, "F": Finally, "G": Globally}
_UNTIL = {"U": Until, "W": WeakUntil}
_OPERATORS = frozenset({"!", "&&", "||", "(", ")", "-", *COMPARISON_OPS})


def _check_operators(tokens: list[Token]) -> list[Token]:
    for tok in tokens:
        if tok.kind == "OP" and tok.text not in _OPERATORS:
            raise ParseError(f"unknown operator token {tok.text!r}", tok.line, tok.column, tok.text)
    return tokens


class _Parser:
    def __init__(self, ts: TokenStream):
        self.ts = ts

    def formula(self) -> Formula:
        left = self.conjunction()
        while self.ts.accept("||"):
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.until()
        while self.ts.accept("&&"):
            left = And(left, self.until())
        return left

    def until(self) -> Formula:
        left = self.unary()
        tok = self.ts.peek()
        if tok.kind == "IDENT" and tok.text in _UNTIL:
            self.ts.next()
            return _UNTIL[tok.text](left, self.until())
        return left

    def unary(self) -> Formula:
        tok = self.ts.peek()
        if tok.text in _PREFIX and tok.kind in ("OP", "IDENT"):
            self.ts.next()
            return _PREFIX[tok.text](self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.ts.peek()
        if self.ts.accept("("):
            inner = self.formula()
            self.ts.expect(")")
            return inner
        if tok.kind == "IDENT":
            if tok.text == "true":
                self.ts.next()
                return TRUE
            if tok.text == "false":
                self.ts.next()
                return FALSE
            if tok.text in KEYWORDS:
                raise self.ts.error("operator used where an operand was expected", tok)
            return self.atom()
        raise self.ts.error("expected an operand", tok)

    def atom(self) -> Atom:
        name = self.ts.next().text
        tok = self.ts.peek()
        if tok.kind != "OP" or tok.text not in COMPARISON_OPS:
            return Atom(name)
        op = self.ts.next().text
        return Atom(name, op, self.comparand())

    def comparand(self) -> str | int:
        tok = self.ts.next()
        negative = False
        if tok.text == "-" and tok.kind == "OP":
            negative = True
            tok = self.ts.next()
        if tok.kind == "INT":
            return -int(tok.text) if negative else int(tok.text)
        if tok.kind == "IDENT" and tok.text not in KEYWORDS and not negative:
            return tok.text
        raise self.ts.error("expected a variable or integer after comparison", tok)


def _finish(parser: _Parser, value):
    tok: Token = parser.ts.peek()
    if tok.kind != "EOF":
        raise parser.ts.error("unexpected trailing input", tok)
    return value


def parse_property(text: str, line: int = 1) -> Formula:
    """Parse one property.

    >>> parse_property("G (!(crit1 && crit2))")
    Globally(Not(And(Atom(crit1), Atom(crit2))))
    """
    if not text.strip():
        raise ParseError("empty property", line, 1)
    parser = _Parser(TokenStream(_check_operators(tokenize(text, line))))
    return _finish(parser, parser.formula())


def parse_atom(text: str) -> Atom:
    """Parse a bare atom such as ``crit1`` or ``a>0`` (used for trace keys)."""
    parser = _Parser(TokenStream(_check_operators(tokenize(text))))
    tok = parser.ts.peek()
    if tok.kind != "IDENT" or tok.text in KEYWORDS:
        raise parser.ts.error("expected an atomic proposition", tok)
    return _finish(parser, parser.atom())


def parse_property_lines(text: str) -> list[tuple[int, str, Formula]]:
    """Parse a property file body: one formula per line, ``#`` comments.

    Returns ``(line_number, source_text, formula)`` triples.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0]
        if code.strip():
            out.append((lineno, code.strip(), parse_property(code, line=lineno)))
    return out


def load_properties(path: str | Path) -> list[tuple[int, str, Formula]]:
    return parse_property_lines(Path(path).read_text(encoding="utf-8"))
