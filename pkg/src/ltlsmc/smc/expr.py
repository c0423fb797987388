"""Expressions of the program language.

Integers and booleans only: literals, variables, ``+ -`` (binary and unary
minus), comparisons, ``! && ||`` and parentheses.  Expressions are type
checked against the declared variables when a program is loaded, and
evaluation re-checks operand types so a bad value can never slip through.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from ltlsmc.errors import LtlsmcError, ParseError
from ltlsmc.formula.lexer import TokenStream, tokenize

Value = Union[int, bool]

_CMP = {
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}
_ORDER_OPS = frozenset({"<", "<=", ">", ">="})
_ALLOWED_OPS = frozenset({"!", "&&", "||", "(", ")", "+", "-", ":=", *_CMP})


class ExecutionError(LtlsmcError):
    """Run-time failure while executing a program."""


def type_name(value: Value) -> str:
    return "bool" if isinstance(value, bool) else "int"


@dataclass(frozen=True)
class Const:
    value: Value

    def eval(self, env: Mapping[str, Value]) -> Value:
        return self.value

    def __str__(self) -> str:
        return str(self.value).lower() if isinstance(self.value, bool) else str(self.value)


@dataclass(frozen=True)
class Var:
    name: str

    def eval(self, env: Mapping[str, Value]) -> Value:
        try:
            return env[self.name]
        except KeyError:
            raise ExecutionError(f"undeclared variable {self.name!r}") from None

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Unary:
    op: str  # "!" or "-"
    arg: Expr

    def eval(self, env: Mapping[str, Value]) -> Value:
        v = self.arg.eval(env)
        if self.op == "!":
            return not _want(v, "bool", self.op)
        return -_want(v, "int", self.op)

    def __str__(self) -> str:
        return f"{self.op}{_wrap(self.arg)}"


@dataclass(frozen=True)
class Binary:
    op: str
    left: Expr
    right: Expr

    def eval(self, env: Mapping[str, Value]) -> Value:
        op = self.op
        if op == "&&":
            return _want(self.left.eval(env), "bool", op) and _want(self.right.eval(env), "bool", op)
        if op == "||":
            return _want(self.left.eval(env), "bool", op) or _want(self.right.eval(env), "bool", op)
        a, b = self.left.eval(env), self.right.eval(env)
        if op == "+":
            return _want(a, "int", op) + _want(b, "int", op)
        if op == "-":
            return _want(a, "int", op) - _want(b, "int", op)
        if op in _ORDER_OPS:
            return _CMP[op](_want(a, "int", op), _want(b, "int", op))
        if type_name(a) != type_name(b):
            raise ExecutionError(f"cannot compare {type_name(a)} with {type_name(b)} using {op!r}")
        return _CMP[op](a, b)

    def __str__(self) -> str:
        return f"{_wrap(self.left)} {self.op} {_wrap(self.right)}"


Expr = Union[Const, Var, Unary, Binary]


def _want(value: Value, kind: str, op: str) -> Value:
    if type_name(value) != kind:
        raise ExecutionError(f"operator {op!r} needs {kind} operands, got {type_name(value)}")
    return value


def _wrap(e: Expr) -> str:
    return f"({e})" if isinstance(e, Binary) else str(e)


# -- parsing ----------------------------------------------------------------


class _ExprParser:
    def __init__(self, text: str):
        tokens = tokenize(text)
        for tok in tokens:
            if tok.kind == "OP" and tok.text not in _ALLOWED_OPS:
                raise ParseError(f"unknown operator token {tok.text!r}", tok.line, tok.column, tok.text)
        self.ts = TokenStream(tokens)

    def disjunction(self) -> Expr:
        left = self.conjunction()
        while self.ts.accept("||"):
            left = Binary("||", left, self.conjunction())
        return left

    def conjunction(self) -> Expr:
        left = self.negation()
        while self.ts.accept("&&"):
            left = Binary("&&", left, self.negation())
        return left

    def negation(self) -> Expr:
        if self.ts.accept("!"):
            return Unary("!", self.negation())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        tok = self.ts.peek()
        if tok.kind == "OP" and tok.text in _CMP:
            self.ts.next()
            return Binary(tok.text, left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.sign()
        while True:
            tok = self.ts.peek()
            if tok.kind == "OP" and tok.text in ("+", "-"):
                self.ts.next()
                left = Binary(tok.text, left, self.sign())
            else:
                return left

    def sign(self) -> Expr:
        if self.ts.accept("-"):
            inner = self.sign()
            if isinstance(inner, Const) and not isinstance(inner.value, bool):
                return Const(-inner.value)
            return Unary("-", inner)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.ts.peek()
        if self.ts.accept("("):
            inner = self.disjunction()
            self.ts.expect(")")
            return inner
        if tok.kind == "INT":
            self.ts.next()
            return Const(int(tok.text))
        if tok.kind == "IDENT":
            self.ts.next()
            if tok.text in ("true", "false"):
                return Const(tok.text == "true")
            return Var(tok.text)
        raise self.ts.error("expected an operand")

    def done(self) -> None:
        if self.ts.peek().kind != "EOF":
            raise self.ts.error("unexpected trailing input")


def parse_expr(text: str) -> Expr:
    """Parse an expression such as ``b2 == false`` or ``x1 + 1``."""
    p = _ExprParser(text)
    e = p.disjunction()
    p.done()
    return e


def parse_assignment(text: str) -> tuple[str, Expr]:
    """Parse ``var := expr``."""
    p = _ExprParser(text)
    tok = p.ts.next()
    if tok.kind != "IDENT" or tok.text in ("true", "false"):
        raise p.ts.error("expected a variable name", tok)
    p.ts.expect(":=")
    e = p.disjunction()
    p.done()
    return tok.text, e


# -- static checking ---------------------------------------------------------


def variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Unary):
        return variables(e.arg)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    return set()


def infer_type(e: Expr, types: Mapping[str, str]) -> str:
    """Return ``"int"`` or ``"bool"``; raise LtlsmcError on ill-typed input."""
    if isinstance(e, Const):
        return type_name(e.value)
    if isinstance(e, Var):
        if e.name not in types:
            raise LtlsmcError(f"undeclared variable {e.name!r}")
        return types[e.name]
    if isinstance(e, Unary):
        want = "bool" if e.op == "!" else "int"
        if infer_type(e.arg, types) != want:
            raise LtlsmcError(f"operator {e.op!r} needs a {want} operand in {e}")
        return want
    lt, rt = infer_type(e.left, types), infer_type(e.right, types)
    if e.op in ("&&", "||"):
        want, result = "bool", "bool"
    elif e.op in ("+", "-"):
        want, result = "int", "int"
    elif e.op in _ORDER_OPS:
        want, result = "int", "bool"
    else:
        if lt != rt:
            raise LtlsmcError(f"cannot compare {lt} with {rt} in {e}")
        return "bool"
    if lt != want or rt != want:
        raise LtlsmcError(f"operator {e.op!r} needs {want} operands in {e}")
    return result
