"""Brute-force reference implementations and exhaustive property checks."""

from .decomposition import (
    DecomposingPoster,
    Decomposition,
    build_decomposition,
    differential_run,
)
from .domains import fmt_domain
from .extensional import (
    COMPLETENESS_LEVELS,
    Extensional,
    complete_propagator,
    dom_relax,
    induced_constraint,
)
from .theorems import (
    ALL_ENTRIES,
    CLAIMS,
    ORACLE_ENTRIES,
    HullProperties,
    Lab,
    TheoremResult,
    check_theorem,
    hull_property,
)

__all__ = [
    "ALL_ENTRIES",
    "CLAIMS",
    "COMPLETENESS_LEVELS",
    "DecomposingPoster",
    "Decomposition",
    "Extensional",
    "HullProperties",
    "Lab",
    "ORACLE_ENTRIES",
    "TheoremResult",
    "build_decomposition",
    "check_theorem",
    "complete_propagator",
    "differential_run",
    "dom_relax",
    "fmt_domain",
    "hull_property",
    "induced_constraint",
]
