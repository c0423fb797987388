"""LTL abstract syntax.

Nodes are frozen dataclasses, so equality and hashing are structural.  Node
identifiers are not stored on the nodes: the identifier of a subformula is
its position in the pre-order walk returned by :func:`subformulas`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

COMPARISON_OPS = ("==", "!=", "<", "<=", ">", ">=")


@dataclass(frozen=True, slots=True)
class TrueConst:
    def __repr__(self) -> str:
        return "True"


@dataclass(frozen=True, slots=True)
class FalseConst:
    def __repr__(self) -> str:
        return "False"


TRUE = TrueConst()
FALSE = FalseConst()


@dataclass(frozen=True, slots=True)
class Atom:
    """Atomic proposition.

    Either a bare identifier naming a boolean proposition (``op is None``) or
    a comparison ``name op rhs`` over program variables, where ``rhs`` is a
    variable name or an integer literal.
    """

    name: str
    op: str | None = None
    rhs: str | int | None = None

    def __post_init__(self) -> None:
        if (self.op is None) != (self.rhs is None):
            raise ValueError("comparison atoms need both an operator and a right-hand side")
        if self.op is not None and self.op not in COMPARISON_OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    @property
    def is_comparison(self) -> bool:
        return self.op is not None

    @property
    def key(self) -> str:
        """Canonical text used to look the atom up in snapshots."""
        if self.op is None:
            return self.name
        return f"{self.name} {self.op} {self.rhs}"

    def __repr__(self) -> str:
        return f"Atom({self.key})"


@dataclass(frozen=True, slots=True)
class Not:
    arg: Formula

    def __repr__(self) -> str:
        return f"Not({self.arg!r})"


@dataclass(frozen=True, slots=True)
class And:
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Or:
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Next:
    arg: Formula

    def __repr__(self) -> str:
        return f"Next({self.arg!r})"


@dataclass(frozen=True, slots=True)
class Until:
    """Strong until: ``right`` must eventually hold."""

    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"StrongUntil({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class WeakUntil:
    left: Formula
    right: Formula

    def __repr__(self) -> str:
        return f"WeakUntil({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True)
class Finally:
    arg: Formula

    def __repr__(self) -> str:
        return f"Finally({self.arg!r})"


@dataclass(frozen=True, slots=True)
class Globally:
    arg: Formula

    def __repr__(self) -> str:
        return f"Globally({self.arg!r})"


Formula = Union[TrueConst, FalseConst, Atom, Not, And, Or, Next, Until, WeakUntil, Finally, Globally]

UNARY = (Not, Next, Finally, Globally)
BINARY = (And, Or, Until, WeakUntil)
LEAVES = (TrueConst, FalseConst, Atom)
BASIS = (TrueConst, Atom, Not, And, Next, Until)


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, UNARY):
        return (f.arg,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, left child before right child."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def subformulas(f: Formula) -> list[tuple[int, Formula]]:
    """Pre-order enumeration with identifiers ``0 .. size-1``.

    >>> subformulas(And(Atom("p"), Atom("q")))
    [(0, And(Atom(p), Atom(q))), (1, Atom(p)), (2, Atom(q))]
    """
    return list(enumerate(walk(f)))


def atoms(f: Formula) -> list[Atom]:
    """Distinct atoms in first-occurrence order."""
    seen: dict[Atom, None] = {}
    for node in walk(f):
        if isinstance(node, Atom):
            seen.setdefault(node, None)
    return list(seen)


def depth(f: Formula) -> int:
    """Height of the tree; a leaf has depth 1."""
    kids = children(f)
    return 1 + max((depth(k) for k in kids), default=0)


def is_basis(f: Formula) -> bool:
    return all(isinstance(node, BASIS) for node in walk(f))


_ASCII = {Not: "!", Next: "X", Finally: "F", Globally: "G", And: "&&", Or: "||", Until: "U", WeakUntil: "W"}
_UNICODE = {Not: "¬", Next: "X", Finally: "F", Globally: "G", And: "∧", Or: "∨", Until: "U", WeakUntil: "W"}


def _render(f: Formula, table: dict, top: bool) -> str:
    if isinstance(f, TrueConst):
        return "true"
    if isinstance(f, FalseConst):
        return "false"
    if isinstance(f, Atom):
        return f.key
    sym = table[type(f)]
    if isinstance(f, UNARY):
        inner = _render(f.arg, table, top=False)
        if isinstance(f.arg, Atom) and f.arg.is_comparison:
            inner = f"({inner})"
        sep = "" if sym in ("!", "¬") else " "
        return f"{sym}{sep}{inner}"
    text = f"{_render(f.left, table, False)} {sym} {_render(f.right, table, False)}"
    return text if top else f"({text})"


def to_text(f: Formula) -> str:
    """ASCII rendering accepted back by :func:`ltlsmc.formula.parse_property`."""
    return _render(f, _ASCII, top=True)


def to_unicode(f: Formula) -> str:
    """Display rendering, e.g. ``¬(true U (crit1 ∧ crit2))``."""
    return _render(f, _UNICODE, top=True)
