"""Property language: syntax tree, parser, basis rewriting, classification."""

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
    atoms,
    depth,
    is_basis,
    subformulas,
    to_text,
    to_unicode,
    walk,
)
from ltlsmc.formula.hierarchy import TemporalClass, classify, members
from ltlsmc.formula.parser import load_properties, parse_atom, parse_property, parse_property_lines
from ltlsmc.formula.rewrite import neg, rewrite_to_basis

StrongUntil = Until

__all__ = [
    "FALSE",
    "TRUE",
    "And",
    "Atom",
    "FalseConst",
    "Finally",
    "Formula",
    "Globally",
    "Next",
    "Not",
    "Or",
    "StrongUntil",
    "TemporalClass",
    "TrueConst",
    "Until",
    "WeakUntil",
    "atoms",
    "classify",
    "depth",
    "is_basis",
    "load_properties",
    "members",
    "neg",
    "parse_atom",
    "parse_property",
    "parse_property_lines",
    "rewrite_to_basis",
    "subformulas",
    "to_text",
    "to_unicode",
    "walk",
]
