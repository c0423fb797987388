"""Reference evaluator for the finite-path TL_G / TL_F semantics.

This is the ground truth the monitor network is tested against, so it is
written as the plain recursive definition with no incremental state:

* the empty word is unresolved for every formula;
* ``true`` and atoms are decided by the first letter;
* negation swaps 0 and 1 and keeps ``?``;
* conjunction is the minimum in the order 0 < ? < 1 (Kleene);
* ``X f`` evaluates ``f`` on the word without its first letter;
* ``f U g`` evaluates its one-step unrolling ``g or (f and X(f U g))``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from ltlsmc.errors import BasisError, LtlsmcError, UnsupportedClassError
from ltlsmc.formula.ast import And, Atom, Formula, Next, Not, TrueConst, Until, atoms, is_basis
from ltlsmc.formula.hierarchy import TemporalClass

MAX_APS = 4
MAX_LEN = 8


class ThreeValue(enum.IntEnum):
    V0 = 0
    VQ = 1  # unresolved
    V1 = 2

    def complement(self) -> ThreeValue:
        return ThreeValue(2 - self)


def meet(a: ThreeValue, b: ThreeValue) -> ThreeValue:
    return min(a, b)


def join(a: ThreeValue, b: ThreeValue) -> ThreeValue:
    return max(a, b)


class Verdict(enum.Enum):
    FALSE = "false"
    TRUE = "true"
    PRESUMABLY_TRUE = "presumably_true"
    PRESUMABLY_FALSE = "presumably_false"

    @property
    def is_failure(self) -> bool:
        return self in (Verdict.FALSE, Verdict.PRESUMABLY_FALSE)

    def __str__(self) -> str:
        return self.value


def map_verdict(value: ThreeValue, cls: TemporalClass) -> Verdict:
    """Definite values map directly; ``?`` becomes the class's presumptive verdict."""
    if cls not in (TemporalClass.TL_G, TemporalClass.TL_F):
        raise UnsupportedClassError(f"class {cls} not supported for monitoring")
    if value is ThreeValue.V1:
        return Verdict.TRUE
    if value is ThreeValue.V0:
        return Verdict.FALSE
    return Verdict.PRESUMABLY_TRUE if cls is TemporalClass.TL_G else Verdict.PRESUMABLY_FALSE


@dataclass(frozen=True)
class FiniteWord:
    """Finite sequence of letters; each letter is the set of atom keys that hold."""

    letters: tuple[frozenset[str], ...]
    aps: frozenset[str]

    def __post_init__(self) -> None:
        for i, letter in enumerate(self.letters):
            extra = letter - self.aps
            if extra:
                raise LtlsmcError(f"letter {i} mentions undeclared propositions {sorted(extra)}")

    @classmethod
    def of(cls, letters: Iterable[Iterable[str]], aps: Iterable[str] | None = None) -> FiniteWord:
        sets = tuple(frozenset(letter) for letter in letters)
        universe = frozenset(aps) if aps is not None else frozenset().union(*sets)
        return cls(sets, universe)

    @classmethod
    def from_valuations(cls, rows: Iterable[Mapping[str, bool]], aps: Iterable[str]) -> FiniteWord:
        return cls(tuple(frozenset(k for k, v in row.items() if v) for row in rows), frozenset(aps))

    def __len__(self) -> int:
        return len(self.letters)

    def valuation(self, i: int) -> dict[str, bool]:
        return {ap: ap in self.letters[i] for ap in self.aps}

    def __repr__(self) -> str:
        if not self.letters:
            return "ε"
        return "".join("{" + ",".join(sorted(letter)) + "}" for letter in self.letters)


def eval_three_valued(u: FiniteWord, f: Formula) -> ThreeValue:
    """Three-valued truth of a basis formula on ``u``."""
    if not is_basis(f):
        raise BasisError(f"formula is not in the monitoring basis: {f!r}")
    missing = {a.key for a in atoms(f)} - u.aps
    if missing:
        raise LtlsmcError(f"atoms {sorted(missing)} are not in the word's proposition set")
    letters = u.letters
    n = len(letters)

    def ev(i: int, g: Formula) -> ThreeValue:
        if i >= n:
            return ThreeValue.VQ
        if isinstance(g, TrueConst):
            return ThreeValue.V1
        if isinstance(g, Atom):
            return ThreeValue.V1 if g.key in letters[i] else ThreeValue.V0
        if isinstance(g, Not):
            return ev(i, g.arg).complement()
        if isinstance(g, And):
            return meet(ev(i, g.left), ev(i, g.right))
        if isinstance(g, Next):
            return ev(i + 1, g.arg)
        if isinstance(g, Until):
            return join(ev(i, g.right), meet(ev(i, g.left), ev(i + 1, g)))
        raise BasisError(f"unexpected node {g!r}")

    return ev(0, f)


def verdict_finite(u: FiniteWord, f: Formula, cls: TemporalClass) -> Verdict:
    if not cls.monitorable:
        raise UnsupportedClassError(f"class {cls} not supported for monitoring")
    return map_verdict(eval_three_valued(u, f), cls)


def enumerate_words(aps: Iterable[str], max_len: int) -> Iterator[FiniteWord]:
    """Every word over ``aps`` up to ``max_len`` letters, shortest first.

    Letters are ordered by the bitmask over the sorted propositions, so the
    enumeration is deterministic.
    """
    names = sorted(set(aps))
    if len(names) > MAX_APS or max_len > MAX_LEN or max_len < 0:
        raise LtlsmcError(f"enumeration limited to {MAX_APS} propositions and length {MAX_LEN}")
    universe = frozenset(names)
    alphabet = [
        frozenset(name for bit, name in enumerate(names) if mask >> bit & 1)
        for mask in range(1 << len(names))
    ]
    for length in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=length):
            yield FiniteWord(letters, universe)
