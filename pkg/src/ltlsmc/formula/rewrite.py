"""Rewriting into the monitoring basis {true, atom, !, &&, X, U}."""

from __future__ import annotations

from ltlsmc.formula.ast import (
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


def neg(f: Formula) -> Formula:
    """Negate, cancelling a double negation."""
    return f.arg if isinstance(f, Not) else Not(f)


def rewrite_to_basis(f: Formula) -> Formula:
    """Return an equivalent formula built only from basis operators.

    F x  -> true U x
    G x  -> !(true U !x)
    x || y -> !(!x && !y)
    x W y  -> (x U y) || G x, then rewritten
    false  -> !true

    Double negations are removed everywhere, so the result is a fixpoint.
    """
    if isinstance(f, (TrueConst, Atom)):
        return f
    if isinstance(f, FalseConst):
        return Not(TRUE)
    if isinstance(f, Not):
        return neg(rewrite_to_basis(f.arg))
    if isinstance(f, And):
        return And(rewrite_to_basis(f.left), rewrite_to_basis(f.right))
    if isinstance(f, Or):
        return neg(And(neg(rewrite_to_basis(f.left)), neg(rewrite_to_basis(f.right))))
    if isinstance(f, Next):
        return Next(rewrite_to_basis(f.arg))
    if isinstance(f, Until):
        return Until(rewrite_to_basis(f.left), rewrite_to_basis(f.right))
    if isinstance(f, Finally):
        return Until(TRUE, rewrite_to_basis(f.arg))
    if isinstance(f, Globally):
        return neg(Until(TRUE, neg(rewrite_to_basis(f.arg))))
    if isinstance(f, WeakUntil):
        return rewrite_to_basis(Or(Until(f.left, f.right), Globally(f.left)))
    raise TypeError(f"not a formula: {f!r}")
