"""STL formulas: syntax tree, parser, and static analyses."""

from rosi.formula.analysis import (
    HorizonAnnotation,
    UnboundedFormulaError,
    UntimedClass,
    UntimedMatch,
    compute_horizons,
    compute_k,
    compute_last,
    untimed_class,
    window_width,
)
from rosi.formula.ast import (
    Always,
    And,
    Eventually,
    Formula,
    NodeKind,
    Not,
    Or,
    Predicate,
    Until,
    is_bounded,
    render,
    walk,
)
from rosi.formula.parser import FormulaSyntaxError, parse

__all__ = [
    "Always",
    "And",
    "Eventually",
    "Formula",
    "FormulaSyntaxError",
    "HorizonAnnotation",
    "NodeKind",
    "Not",
    "Or",
    "Predicate",
    "UnboundedFormulaError",
    "UntimedClass",
    "UntimedMatch",
    "Until",
    "compute_horizons",
    "compute_k",
    "compute_last",
    "is_bounded",
    "parse",
    "render",
    "untimed_class",
    "walk",
    "window_width",
]
