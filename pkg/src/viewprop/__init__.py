"""Finite-domain propagation kernel with view-derived propagators."""

from .engine import Fail, PropStatus, Propagator, Space, SpaceStatus
from .kernel import EMPTY, DomainMap, ExtensionalConstraint, Range, RangeSeq, hull, normalize, seq_cardinality
from .variables import BoolVar, ContractViolation, Ev, IntVar, ModEvent, SetVar
from .views import IDENTITY, ViewSpec, compose

__all__ = [
    "BoolVar",
    "ContractViolation",
    "DomainMap",
    "EMPTY",
    "Ev",
    "ExtensionalConstraint",
    "Fail",
    "IDENTITY",
    "IntVar",
    "ModEvent",
    "PropStatus",
    "Propagator",
    "Range",
    "RangeSeq",
    "SetVar",
    "Space",
    "SpaceStatus",
    "ViewSpec",
    "compose",
    "hull",
    "normalize",
    "seq_cardinality",
]
