"""Classification into the temporal hierarchy G, F, Prefix, GF, FG, Streett.

The two smallest classes are decided by until polarity: a formula is in TL_G
when every weak until occurs positively and every strong until negatively,
and in TL_F in the dual situation.  ``F x`` counts as a strong until and
``G x`` as a weak until (``x W false``), each at the polarity where it
occurs.  The larger classes follow their grammar productions directly.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from ltlsmc.formula.ast import (
    FALSE,
    TRUE,
    And,
    Atom,
    FalseConst,
    Finally,
    Formula,
    Globally,
    Next,
    Not,
    Or,
    TrueConst,
    Until,
    WeakUntil,
)


class TemporalClass(enum.Enum):
    TL_G = "TL_G"
    TL_F = "TL_F"
    TL_PREFIX = "TL_Prefix"
    TL_GF = "TL_GF"
    TL_FG = "TL_FG"
    TL_STREETT = "TL_Streett"
    UNCLASSIFIED = "Unclassified"

    @property
    def monitorable(self) -> bool:
        return self in (TemporalClass.TL_G, TemporalClass.TL_F)

    def __str__(self) -> str:
        return self.value


def _polarity_ok(f: Formula, weak_positive: bool, positive: bool = True) -> bool:
    """True when weak untils sit at polarity ``weak_positive`` and strong
    untils at the opposite polarity."""
    if isinstance(f, (TrueConst, FalseConst, Atom)):
        return True
    if isinstance(f, Not):
        return _polarity_ok(f.arg, weak_positive, not positive)
    if isinstance(f, (And, Or)):
        return _polarity_ok(f.left, weak_positive, positive) and _polarity_ok(
            f.right, weak_positive, positive
        )
    if isinstance(f, Next):
        return _polarity_ok(f.arg, weak_positive, positive)
    if isinstance(f, (WeakUntil, Globally)):
        ok = positive == weak_positive
    elif isinstance(f, (Until, Finally)):
        ok = positive != weak_positive
    else:
        raise TypeError(f"not a formula: {f!r}")
    return ok and all(
        _polarity_ok(k, weak_positive, positive)
        for k in ((f.arg,) if isinstance(f, (Finally, Globally)) else (f.left, f.right))
    )


def in_g(f: Formula) -> bool:
    return _polarity_ok(f, weak_positive=True)


def in_f(f: Formula) -> bool:
    return _polarity_ok(f, weak_positive=False)


def _as_until(f: Formula) -> Formula:
    # F x == true U x ; G x == x W false
    if isinstance(f, Finally):
        return Until(TRUE, f.arg)
    if isinstance(f, Globally):
        return WeakUntil(f.arg, FALSE)
    return f


_BOOLEAN = (Not, And, Or)


def _kids(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.arg,)
    return (f.left, f.right)


@lru_cache(maxsize=65536)
def in_prefix(f: Formula) -> bool:
    if in_g(f) or in_f(f):
        return True
    return isinstance(f, _BOOLEAN) and all(in_prefix(k) for k in _kids(f))


@lru_cache(maxsize=65536)
def in_gf(f: Formula) -> bool:
    if in_prefix(f):
        return True
    f = _as_until(f)
    if isinstance(f, Not):
        return in_fg(f.arg)
    if isinstance(f, (And, Or)):
        return in_gf(f.left) and in_gf(f.right)
    if isinstance(f, Next):
        return in_gf(f.arg)
    if isinstance(f, WeakUntil):
        return in_gf(f.left) and in_gf(f.right)
    if isinstance(f, Until):
        return in_gf(f.left) and in_f(f.right)
    return False


@lru_cache(maxsize=65536)
def in_fg(f: Formula) -> bool:
    if in_prefix(f):
        return True
    f = _as_until(f)
    if isinstance(f, Not):
        return in_gf(f.arg)
    if isinstance(f, (And, Or)):
        return in_fg(f.left) and in_fg(f.right)
    if isinstance(f, Next):
        return in_fg(f.arg)
    if isinstance(f, Until):
        return in_fg(f.left) and in_fg(f.right)
    if isinstance(f, WeakUntil):
        return in_g(f.left) and in_fg(f.right)
    return False


@lru_cache(maxsize=65536)
def in_streett(f: Formula) -> bool:
    if in_gf(f) or in_fg(f):
        return True
    return isinstance(f, _BOOLEAN) and all(in_streett(k) for k in _kids(f))


# Smallest class first; the first match wins.
_ORDER = (
    (TemporalClass.TL_G, in_g),
    (TemporalClass.TL_F, in_f),
    (TemporalClass.TL_PREFIX, in_prefix),
    (TemporalClass.TL_GF, in_gf),
    (TemporalClass.TL_FG, in_fg),
    (TemporalClass.TL_STREETT, in_streett),
)


def classify(f: Formula) -> TemporalClass:
    """Smallest hierarchy class containing ``f`` (run on the unrewritten formula).

    >>> from ltlsmc.formula.parser import parse_property
    >>> classify(parse_property("G !(crit1 && crit2)")), classify(parse_property("F p"))
    (<TemporalClass.TL_G: 'TL_G'>, <TemporalClass.TL_F: 'TL_F'>)
    """
    for cls, member in _ORDER:
        if member(f):
            return cls
    return TemporalClass.UNCLASSIFIED


def members(f: Formula) -> frozenset[TemporalClass]:
    """Every class whose grammar derives ``f``."""
    return frozenset(cls for cls, member in _ORDER if member(f))
