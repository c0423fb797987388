"""Tokenizer shared by the property parser and the program expression parser."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ltlsmc.errors import ParseError

# Longest operators first so "&&" wins over a stray "&".
_SPEC = [
    ("WS", r"[ \t\r\n]+"),
    ("INT", r"[0-9]+"),
    ("IDENT", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("OP", r"<->|->|:=|==|!=|<=|>=|&&|\|\||[!<>()+\-]"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _SPEC))


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # INT, IDENT, OP or EOF
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    """Split ``text`` into tokens; columns are 1-based.

    Raises ParseError on any character that starts no known token.
    """
    tokens: list[Token] = []
    pos = 0
    line_start = 0
    while pos < len(text):
        m = _MASTER.match(text, pos)
        if m is None:
            bad = text[pos]
            # Report a whole run of punctuation so "->" shows up as one token.
            run = re.match(r"[^\sA-Za-z0-9_()]+", text[pos:])
            shown = run.group(0) if run else bad
            raise ParseError(
                f"unknown operator token {shown!r}", line, pos - line_start + 1, shown
            )
        kind = m.lastgroup
        assert kind is not None
        if kind == "WS":
            newlines = m.group(0).count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + m.group(0).rfind("\n") + 1
        else:
            tokens.append(Token(kind, m.group(0), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with the usual peek/expect helpers."""

    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def next(self) -> Token:
        tok = self._tokens[self._pos]
        if tok.kind != "EOF":
            self._pos += 1
        return tok

    def accept(self, text: str) -> Token | None:
        tok = self.peek()
        if tok.kind in ("OP", "IDENT") and tok.text == text:
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "EOF":
            raise self.error(f"expected {text!r}", tok)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        shown = tok.text if tok.kind != "EOF" else "end of input"
        return ParseError(f"{message}, found {shown!r}", tok.line, tok.column, tok.text or None)
