"""Flat, index-based form of a basis formula shared by both engines."""

from __future__ import annotations

from dataclasses import dataclass

from ltlsmc.errors import BasisError
from ltlsmc.formula.ast import And, Atom, Formula, Next, Not, TrueConst, Until

K_TRUE, K_ATOM, K_NOT, K_AND, K_NEXT, K_UNTIL = range(6)

_KIND = {TrueConst: K_TRUE, Atom: K_ATOM, Not: K_NOT, And: K_AND, Next: K_NEXT, Until: K_UNTIL}


@dataclass(frozen=True)
class CompiledFormula:
    """Node ``i`` is the ``i``-th subformula in pre-order; node 0 is the root.

    ``arg0``/``arg1`` hold child node ids (``-1`` when absent); for atoms
    ``arg0`` is the index into ``atoms``.  ``canon[i]`` is the smallest node
    id whose subformula is structurally equal to node ``i``; evaluators
    are shared on ``(canon, offset)``.
    """

    formula: Formula
    kinds: tuple[int, ...]
    arg0: tuple[int, ...]
    arg1: tuple[int, ...]
    canon: tuple[int, ...]
    atoms: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.kinds)


def compile_formula(f: Formula) -> CompiledFormula:
    kinds: list[int] = []
    arg0: list[int] = []
    arg1: list[int] = []
    canon: list[int] = []
    first_equal: dict[Formula, int] = {}
    atom_index: dict[str, int] = {}

    # Pre-order numbering, matching ltlsmc.formula.subformulas.
    def visit(node: Formula) -> int:
        kind = _KIND.get(type(node))
        if kind is None:
            raise BasisError(f"{type(node).__name__} is outside the monitoring basis")
        sid = len(kinds)
        kinds.append(kind)
        canon.append(first_equal.setdefault(node, sid))
        arg0.append(-1)
        arg1.append(-1)
        if kind == K_ATOM:
            arg0[sid] = atom_index.setdefault(node.key, len(atom_index))
        elif kind in (K_NOT, K_NEXT):
            arg0[sid] = visit(node.arg)
        elif kind in (K_AND, K_UNTIL):
            arg0[sid] = visit(node.left)
            arg1[sid] = visit(node.right)
        return sid

    visit(f)
    return CompiledFormula(f, tuple(kinds), tuple(arg0), tuple(arg1), tuple(canon), tuple(atom_index))
