"""
Coxeter group engine: matrices, classification, root tables and elements.
"""

from scox.core.classification import INFINITE_TYPE, classify, named_matrix
from scox.core.system import (
    EMPTY,
    CoxeterSystem,
    Element,
    GenSubset,
    bruhat_leq,
    classify_components,
    inv,
    is_finitary,
    left_descents,
    length,
    longest_element,
    mul,
    named_system,
    new_system,
    right_descents,
    star,
)

__all__ = [
    "INFINITE_TYPE",
    "classify",
    "named_matrix",
    "EMPTY",
    "CoxeterSystem",
    "Element",
    "classify_components",
    "GenSubset",
    "bruhat_leq",
    "inv",
    "is_finitary",
    "left_descents",
    "length",
    "longest_element",
    "mul",
    "named_system",
    "new_system",
    "right_descents",
    "star",
]
