"""Implemented propagators and the catalog of derived variants."""

from .boolean import BoolCardGeq, BoolClause, BoolOrEq
from .integer import (
    AllDiffBounds,
    AllDiffValue,
    ElementConst,
    Eq,
    LinearEq,
    LinearLeq,
    LinearNeq,
    MaxN,
    ReifiedLinearEq,
    max2,
)
from .sets import SetCard, SetEq, SetIntersect, SetSubset

__all__ = [
    "AllDiffBounds",
    "AllDiffValue",
    "BoolCardGeq",
    "BoolClause",
    "BoolOrEq",
    "ElementConst",
    "Eq",
    "LinearEq",
    "LinearLeq",
    "LinearNeq",
    "MaxN",
    "ReifiedLinearEq",
    "SetCard",
    "SetEq",
    "SetIntersect",
    "SetSubset",
    "max2",
]
