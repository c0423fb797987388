from __future__ import annotations

import pytest
from hypothesis import given, settings
from strategies import basis_formulas, f_formulas, full_formulas, g_formulas, has_until

from ltlsmc.errors import ParseError
from ltlsmc.formula import (
    FALSE,
    TRUE,
    And,
    Atom,
    Finally,
    Globally,
    Next,
    Not,
    Or,
    StrongUntil,
    TemporalClass,
    Until,
    WeakUntil,
    atoms,
    classify,
    depth,
    is_basis,
    members,
    parse_atom,
    parse_property,
    parse_property_lines,
    rewrite_to_basis,
    subformulas,
    to_text,
    to_unicode,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")
crit = And(Atom("crit1"), Atom("crit2"))


# -- parsing ----------------------------------------------------------------


def test_parse_tree_of_comparison_property():
    f = parse_property("(!((a>0) && (b==1))) U (c==0)")
    assert f == StrongUntil(Not(And(Atom("a", ">", 0), Atom("b", "==", 1))), Atom("c", "==", 0))
    assert repr(f) == "StrongUntil(Not(And(Atom(a > 0), Atom(b == 1))), Atom(c == 0))"


def test_parse_constant():
    assert parse_property("true") == TRUE
    assert parse_property("false") == FALSE


def test_parse_mutex_property():
    assert parse_property("G (!(crit1 && crit2))") == Globally(Not(crit))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p U q U r", Until(p, Until(q, r))),
        ("p W q U r", WeakUntil(p, Until(q, r))),
        ("p && q || r", Or(And(p, q), r)),
        ("p || q && r", Or(p, And(q, r))),
        ("!p U q", Until(Not(p), q)),
        ("X p && q", And(Next(p), q)),
        ("p && q U r", And(p, Until(q, r))),
        ("G F p", Globally(Finally(p))),
        ("!!p", Not(Not(p))),
        ("(p || q) && r", And(Or(p, q), r)),
        ("x <= -3", Atom("x", "<=", -3)),
        ("x != y", Atom("x", "!=", "y")),
    ],
)
def test_precedence_and_associativity(text, expected):
    assert parse_property(text) == expected


@pytest.mark.parametrize(
    "text, line, column, token",
    [
        ("U p", 1, 1, "U"),
        ("p &&", 1, 5, None),
        ("(p", 1, 3, None),
        ("p q", 1, 3, "q"),
        ("p -> q", 1, 3, "->"),
        ("p & q", 1, 3, "&"),
        ("x == true", 1, 6, "true"),
    ],
)
def test_syntax_errors_report_position(text, line, column, token):
    with pytest.raises(ParseError) as info:
        parse_property(text)
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert err.token == token
    assert f"line {line}, column {column}" in str(err)


def test_unknown_operator_is_named():
    with pytest.raises(ParseError, match="unknown operator token '->'"):
        parse_property("p -> q")


def test_empty_property_rejected():
    with pytest.raises(ParseError):
        parse_property("   ")


def test_property_file_comments_and_blank_lines():
    text = "# header\n\nG !p   # safety\n  F q\n"
    rows = parse_property_lines(text)
    assert [(n, s) for n, s, _ in rows] == [(3, "G !p"), (4, "F q")]
    assert rows[0][2] == Globally(Not(p))


def test_property_file_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_property_lines("p\n\n  q U\n")
    assert info.value.line == 3


def test_parse_atom_keys():
    assert parse_atom("crit1").key == "crit1"
    assert parse_atom("a>0").key == "a > 0"
    with pytest.raises(ParseError):
        parse_atom("p && q")


@settings(max_examples=300)
@given(full_formulas())
def test_round_trip(f):
    assert parse_property(to_text(f)) == f


def test_atom_equality_is_structural():
    assert Atom("x", "==", 1) == Atom("x", "==", 1)
    assert Atom("x", "==", 1) != Atom("x", "==", "1")
    assert Atom("x") != Atom("x", "==", 1)
    with pytest.raises(ValueError):
        Atom("x", "==")


# -- structure --------------------------------------------------------------


def test_subformulas_preorder():
    assert subformulas(Not(p)) == [(0, Not(p)), (1, p)]
    assert subformulas(p) == [(0, p)]
    assert subformulas(And(p, q)) == [(0, And(p, q)), (1, p), (2, q)]


@given(full_formulas())
def test_subformula_ids_unique_and_deterministic(f):
    ids = [i for i, _ in subformulas(f)]
    assert ids == list(range(len(ids)))
    assert subformulas(f) == subformulas(parse_property(to_text(f)))


def test_depth_and_atoms():
    f = Until(TRUE, And(p, Not(q)))
    assert depth(p) == 1
    assert depth(f) == 4
    assert atoms(And(q, And(p, q))) == [q, p]


def test_unicode_rendering():
    assert to_unicode(Not(Until(TRUE, crit))) == "¬(true U (crit1 ∧ crit2))"


# -- rewriting --------------------------------------------------------------


def test_rewrite_mutex_property():
    assert rewrite_to_basis(Globally(Not(crit))) == Not(Until(TRUE, crit))


def test_rewrite_finally_and_or():
    assert rewrite_to_basis(Finally(p)) == Until(TRUE, p)
    assert rewrite_to_basis(Or(p, q)) == Not(And(Not(p), Not(q)))
    assert rewrite_to_basis(FALSE) == Not(TRUE)


def test_rewrite_weak_until():
    # p W q == (p U q) || G p
    expected = Not(And(Not(Until(p, q)), Until(TRUE, Not(p))))
    assert rewrite_to_basis(WeakUntil(p, q)) == expected


def test_rewrite_removes_double_negation():
    assert rewrite_to_basis(Not(Not(p))) == p
    assert rewrite_to_basis(Globally(p)) == Not(Until(TRUE, Not(p)))


@given(full_formulas())
def test_rewrite_lands_in_basis(f):
    assert is_basis(rewrite_to_basis(f))


@given(basis_formulas())
def test_rewrite_idempotent_on_basis(f):
    once = rewrite_to_basis(f)
    assert rewrite_to_basis(once) == once


# -- classification ---------------------------------------------------------


@pytest.mark.parametrize(
    "text, cls",
    [
        ("G (!(crit1 && crit2))", TemporalClass.TL_G),
        ("p", TemporalClass.TL_G),
        ("F p", TemporalClass.TL_F),
        ("G F p", TemporalClass.TL_GF),
        ("F G p", TemporalClass.TL_FG),
        ("G p || F q", TemporalClass.TL_PREFIX),
        ("G F p && F G q", TemporalClass.TL_STREETT),
        ("p W q", TemporalClass.TL_G),
        ("p U q", TemporalClass.TL_F),
        ("!(p U q)", TemporalClass.TL_G),
        ("X G p", TemporalClass.TL_G),
        ("(G F p) W q", TemporalClass.TL_GF),
        ("(G F p) U (F q)", TemporalClass.TL_GF),
        ("(G p) U (F G q)", TemporalClass.TL_FG),
        ("G (p U G q)", TemporalClass.UNCLASSIFIED),
    ],
)
def test_classify_examples(text, cls):
    assert classify(parse_property(text)) is cls


def test_monitorable_flag():
    assert TemporalClass.TL_G.monitorable and TemporalClass.TL_F.monitorable
    assert not TemporalClass.TL_GF.monitorable


def test_propositional_formulas_sit_in_both_small_classes():
    f = And(p, Not(q))
    assert {TemporalClass.TL_G, TemporalClass.TL_F} <= members(f)
    assert classify(f) is TemporalClass.TL_G
    assert classify(Not(f)) is TemporalClass.TL_G


@settings(max_examples=300)
@given(g_formulas())
def test_safety_grammar_classifies_g(f):
    assert classify(f) is TemporalClass.TL_G


@settings(max_examples=300)
@given(f_formulas())
def test_guarantee_grammar_classifies_f(f):
    # formulas without temporal operators are in both classes; the
    # tie-break reports TL_G for those
    expected = TemporalClass.TL_F if has_until(f) else TemporalClass.TL_G
    assert classify(f) is expected


@settings(max_examples=300)
@given(full_formulas())
def test_classify_negation_duality(f):
    m = members(f)
    if TemporalClass.TL_G in m and TemporalClass.TL_F not in m:
        assert classify(f) is TemporalClass.TL_G
        assert classify(Not(f)) is TemporalClass.TL_F
    if TemporalClass.TL_F in m and TemporalClass.TL_G not in m:
        assert classify(f) is TemporalClass.TL_F
        assert classify(Not(f)) is TemporalClass.TL_G


@given(full_formulas())
def test_classification_is_smallest_member(f):
    order = list(TemporalClass)
    m = members(f)
    cls = classify(f)
    if m:
        assert cls is min(m, key=order.index)
    else:
        assert cls is TemporalClass.UNCLASSIFIED
