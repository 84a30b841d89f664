"""Catalog of implemented propagators and the variants derived from them.

Each :class:`CatalogEntry` names one implemented propagator (the core), the
argument kinds it works on, the relation it enforces and its completeness
level.  Each :class:`Variant` instantiates the same core with one view spec
per argument; no variant has propagation code of its own.

The module also provides modelling helpers (``linear``, ``minimum``,
``bool_and``, ``set_union``...) that post derived propagators through a
poster.  A poster either applies the views directly or, for comparison,
decomposes them into auxiliary variables and channelling constraints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .. import views as V
from ..views import IDENTITY, ViewSpec
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
)
from .sets import SetCard, SetEq, SetIntersect, SetSubset

DOMAIN, RANGE, BOUNDS_D, BOUNDS_Z, BOUNDS_R, VALUE = "domain", "range", "boundsD", "boundsZ", "boundsR", "value"
LEVELS = (DOMAIN, RANGE, BOUNDS_D, BOUNDS_Z, BOUNDS_R, VALUE)

INT, BOOL, SET = V.INT, V.BOOL, V.SET


@dataclass(frozen=True)
class Variant:
    """A derived propagator: the core with one view spec per argument.

    ``level`` is the completeness the derived propagator is expected to
    have (None when no level is claimed).  ``universes`` overrides the
    entry's base universes (constant arguments have no universe).
    ``relation`` is the intended constraint over the base values of the
    non-constant arguments.  ``linear`` gives (coefficients, '=' or '<=',
    rhs) for variants whose real relaxation is checked.
    """

    name: str
    specs: tuple[ViewSpec, ...]
    level: str | None
    relation: Callable[..., bool] | None = None
    universes: tuple | None = None
    linear: tuple | None = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: str
    kinds: tuple[str, ...]
    post: Callable
    relation: Callable[..., bool]
    level: str
    universes: tuple
    variants: tuple[Variant, ...] = field(default=())

    @property
    def core(self) -> Variant:
        return Variant("core", tuple(IDENTITY for _ in self.kinds), self.level, self.relation, self.universes)

    def all_variants(self) -> tuple[Variant, ...]:
        return (self.core,) + self.variants

    def base_kinds(self, variant: Variant) -> tuple[str, ...]:
        return tuple(
            s.in_kind(k) for s, k in zip(variant.specs, self.kinds) if not s.is_constant
        )

    def base_universes(self, variant: Variant) -> tuple:
        if variant.universes is not None:
            return variant.universes
        return tuple(u for s, u in zip(variant.specs, self.universes) if not s.is_constant)


def _ints(lo: int, hi: int) -> tuple[int, ...]:
    return tuple(range(lo, hi + 1))


B = (0, 1)
G3 = (1, 2, 3)
G4 = (1, 2, 3, 4)
I = IDENTITY
M = V.minus()
NEG = V.bool_neg()
IOB = V.int_of_bool()


def _max_all(*vs):
    return vs[-1] == max(vs[:-1])


ELEMENT_ARRAY = (2, -1, 3, 0)


def _element(x, y):
    return 0 <= x < len(ELEMENT_ARRAY) and ELEMENT_ARRAY[x] == y


def _distinct(*vs):
    return len(set(vs)) == len(vs)


CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "eq", "equality", (INT, INT), lambda sp, a: Eq(sp, a[0], a[1]),
        lambda x, y: x == y, DOMAIN, (_ints(-2, 3), _ints(-2, 3)),
        (
            Variant("offset", (I, V.offset(2)), DOMAIN, lambda x, y: x == y + 2),
            Variant("scale", (I, V.scale(2)), DOMAIN, lambda x, y: x == 2 * y),
            Variant("minus", (I, M), DOMAIN, lambda x, y: x == -y),
            Variant("minus_offset", (I, V.compose(M, V.offset(1))), DOMAIN, lambda x, y: x == -(y + 1)),
            Variant("constant", (I, V.constant(1)), DOMAIN, lambda x: x == 1, (_ints(-2, 3),)),
            Variant("bool_neg", (IOB, V.compose(IOB, NEG)), DOMAIN, lambda x, y: x == 1 - y, (B, B)),
        ),
    ),
    CatalogEntry(
        "linear_eq", "linear", (INT, INT), lambda sp, a: LinearEq(sp, a, 0),
        lambda x, y: x + y == 0, BOUNDS_Z, (_ints(-2, 3), _ints(-2, 3)),
        (
            Variant("difference", (I, V.compose(M, V.offset(2))), BOUNDS_Z, lambda x, y: x - y == 2),
            Variant("offset", (V.offset(1), I), BOUNDS_Z, lambda x, y: x + 1 + y == 0),
            Variant("scale", (I, V.scale(2)), BOUNDS_R, lambda x, y: x + 2 * y == 0, None, ((1, 2), "=", 0)),
            Variant("neg_scale", (I, V.compose(M, V.scale(2))), BOUNDS_R, lambda x, y: x - 2 * y == 0, None, ((1, -2), "=", 0)),
            Variant("constant", (I, V.constant(-1)), BOUNDS_Z, lambda x: x == 1, (_ints(-2, 3),)),
        ),
    ),
    CatalogEntry(
        "linear_eq_odd", "linear", (INT, INT), lambda sp, a: LinearEq(sp, a, 1),
        lambda x, y: x + y == 1, BOUNDS_Z, (_ints(-2, 3), _ints(-2, 3)),
        (
            Variant("scale_both", (V.scale(2), V.scale(2)), BOUNDS_R, lambda x, y: 2 * x + 2 * y == 1, None, ((2, 2), "=", 1)),
            Variant("scale_one", (V.scale(2), I), BOUNDS_R, lambda x, y: 2 * x + y == 1, None, ((2, 1), "=", 1)),
        ),
    ),
    CatalogEntry(
        "linear_eq3", "linear", (INT, INT, INT), lambda sp, a: LinearEq(sp, a, 2),
        lambda x, y, z: x + y + z == 2, BOUNDS_Z, (_ints(-1, 2),) * 3,
        (
            Variant("bools", (IOB, IOB, IOB), BOUNDS_Z, lambda x, y, z: x + y + z == 2, (B, B, B)),
            Variant("scale", (I, I, V.scale(2)), BOUNDS_R, lambda x, y, z: x + y + 2 * z == 2, None, ((1, 1, 2), "=", 2)),
            Variant("minus", (I, M, I), BOUNDS_Z, lambda x, y, z: x - y + z == 2),
        ),
    ),
    CatalogEntry(
        # all coefficients even and an odd right-hand side: real solutions, no integer ones
        "linear_eq3_odd", "linear", (INT, INT, INT), lambda sp, a: LinearEq(sp, a, 1),
        lambda x, y, z: x + y + z == 1, BOUNDS_Z, (_ints(-1, 1),) * 3,
        (
            Variant(
                "scale_all", (V.scale(2),) * 3, BOUNDS_R,
                lambda x, y, z: 2 * x + 2 * y + 2 * z == 1, None, ((2, 2, 2), "=", 1),
            ),
        ),
    ),
    CatalogEntry(
        "linear_leq", "linear", (INT, INT), lambda sp, a: LinearLeq(sp, a, 1),
        lambda x, y: x + y <= 1, BOUNDS_Z, (_ints(-2, 3), _ints(-2, 3)),
        (
            Variant("difference", (I, M), BOUNDS_Z, lambda x, y: x - y <= 1),
            Variant("geq", (M, M), BOUNDS_Z, lambda x, y: x + y >= -1),
            Variant("scale", (V.scale(2), I), BOUNDS_R, lambda x, y: 2 * x + y <= 1, None, ((2, 1), "<=", 1)),
        ),
    ),
    CatalogEntry(
        "linear_neq", "linear", (INT, INT), lambda sp, a: LinearNeq(sp, a, 1),
        lambda x, y: x + y != 1, DOMAIN, (_ints(-2, 3), _ints(-2, 3)),
        (
            Variant("difference", (I, M), DOMAIN, lambda x, y: x - y != 1),
            Variant("scale", (V.scale(2), I), DOMAIN, lambda x, y: 2 * x + y != 1),
            Variant("offset", (V.offset(3), I), DOMAIN, lambda x, y: x + 3 + y != 1),
        ),
    ),
    CatalogEntry(
        "max", "max", (INT, INT, INT), lambda sp, a: MaxN(sp, a[:-1], a[-1]),
        _max_all, BOUNDS_Z, (_ints(-1, 2),) * 3,
        (
            Variant("min", (M, M, M), BOUNDS_Z, lambda x, y, z: z == min(x, y)),
            Variant("offset", (V.offset(1), I, I), BOUNDS_Z, lambda x, y, z: z == max(x + 1, y)),
        ),
    ),
    CatalogEntry(
        "alldiff_value", "alldiff", (INT, INT, INT), lambda sp, a: AllDiffValue(sp, a),
        _distinct, VALUE, (_ints(0, 3),) * 3,
        (
            Variant("offsets", (I, V.offset(1), V.offset(2)), VALUE, lambda x, y, z: _distinct(x, y + 1, z + 2)),
            Variant("minus", (I, M, I), VALUE, lambda x, y, z: _distinct(x, -y, z), (_ints(0, 3), _ints(-3, 0), _ints(0, 3))),
        ),
    ),
    CatalogEntry(
        "alldiff_bounds", "alldiff", (INT, INT, INT), lambda sp, a: AllDiffBounds(sp, a),
        _distinct, BOUNDS_Z, (_ints(0, 3),) * 3,
        (
            Variant("offsets", (I, V.offset(1), V.offset(2)), BOUNDS_Z, lambda x, y, z: _distinct(x, y + 1, z + 2)),
            Variant("minus", (M, M, M), BOUNDS_Z, _distinct),
            Variant("scale", (I, V.scale(2), I), None, lambda x, y, z: _distinct(x, 2 * y, z)),
        ),
    ),
    CatalogEntry(
        "element", "element", (INT, INT), lambda sp, a: ElementConst(sp, ELEMENT_ARRAY, a[0], a[1]),
        _element, DOMAIN, (_ints(-1, 4), _ints(-1, 3)),
        (
            Variant("index_offset", (V.offset(1), I), DOMAIN, lambda x, y: _element(x + 1, y), (_ints(-2, 3), _ints(-1, 3))),
            Variant("value_scale", (I, V.scale(2)), DOMAIN, lambda x, y: _element(x, 2 * y), (_ints(-1, 4), _ints(-1, 2))),
            Variant("value_minus", (I, M), DOMAIN, lambda x, y: _element(x, -y), (_ints(-1, 4), _ints(-3, 1))),
        ),
    ),
    CatalogEntry(
        "reified_linear_eq", "linear", (INT, INT, BOOL), lambda sp, a: ReifiedLinearEq(sp, a[:2], 1, a[2]),
        lambda x, y, b: (x + y == 1) == (b == 1), BOUNDS_Z, (_ints(-1, 2), _ints(-1, 2), B),
        (
            Variant("neq", (I, I, NEG), BOUNDS_Z, lambda x, y, b: (x + y != 1) == (b == 1)),
            Variant("difference", (I, M, I), BOUNDS_Z, lambda x, y, b: (x - y == 1) == (b == 1)),
            Variant("scale", (V.scale(2), I, I), None, lambda x, y, b: (2 * x + y == 1) == (b == 1)),
        ),
    ),
    CatalogEntry(
        "bool_clause", "boolean", (BOOL,) * 4, lambda sp, a: BoolClause(sp, a),
        lambda *xs: any(xs), DOMAIN, (B,) * 4,
        (
            Variant("nand", (NEG,) * 4, DOMAIN, lambda *xs: not all(xs)),
            Variant("implication", (NEG, I, I, I), DOMAIN, lambda a, *xs: (not a) or any(xs)),
        ),
    ),
    CatalogEntry(
        "bool_or_eq", "boolean", (BOOL,) * 4, lambda sp, a: BoolOrEq(sp, a[:-1], a[-1]),
        lambda a, b, c, y: (a or b or c) == y, DOMAIN, (B,) * 4,
        (
            Variant("and_eq", (NEG,) * 4, DOMAIN, lambda a, b, c, y: (a and b and c) == y),
            Variant("nor_eq", (I, I, I, NEG), DOMAIN, lambda a, b, c, y: (a or b or c) != y),
        ),
    ),
    CatalogEntry(
        "bool_card_geq", "boolean", (BOOL,) * 5, lambda sp, a: BoolCardGeq(sp, a, 2),
        lambda *xs: sum(xs) >= 2, DOMAIN, (B,) * 5,
        (Variant("leq", (NEG,) * 5, DOMAIN, lambda *xs: sum(xs) <= 3),),
    ),
    CatalogEntry(
        "set_intersect", "set", (SET, SET, SET), lambda sp, a: SetIntersect(sp, *a),
        lambda x, y, z: x & y == z, DOMAIN, (G3, G3, G3),
        (
            Variant(
                "union", (V.set_complement(1, 3),) * 3, DOMAIN, lambda x, y, z: x | y == z
            ),
            Variant("difference", (I, V.set_complement(1, 3), I), DOMAIN, lambda x, y, z: x - y == z),
            Variant("disjoint", (I, I, V.const_set(())), DOMAIN, lambda x, y: not (x & y), (G4, G4)),
        ),
    ),
    CatalogEntry(
        "set_subset", "set", (SET, SET), lambda sp, a: SetSubset(sp, a[0], a[1]),
        lambda x, y: x <= y, DOMAIN, (G4, G4),
        (
            Variant("member", (V.singleton_set(), I), DOMAIN, lambda x, y: x in y, (_ints(0, 4), G4)),
            Variant("superset", (V.set_complement(1, 4),) * 2, DOMAIN, lambda x, y: y <= x),
            Variant("constant_lower", (V.const_set((2,)), I), DOMAIN, lambda y: 2 in y, (G4,)),
        ),
    ),
    CatalogEntry(
        "set_eq", "set", (SET, SET), lambda sp, a: SetEq(sp, a[0], a[1]),
        lambda x, y: x == y, DOMAIN, (G4, G4),
        (
            Variant("complement", (I, V.set_complement(1, 4)), DOMAIN, lambda x, y: x == frozenset(G4) - y),
            Variant("singleton", (V.singleton_set(), I), DOMAIN, lambda x, y: y == frozenset((x,)), (_ints(0, 4), G4)),
        ),
    ),
    CatalogEntry(
        "set_card", "set", (SET,), lambda sp, a: SetCard(sp, a[0], 1, 2),
        lambda x: 1 <= len(x) <= 2, DOMAIN, (G4,),
        (Variant("complement", (V.set_complement(1, 4),), DOMAIN, lambda x: 2 <= len(x) <= 3),),
    ),
)


def entry(name: str) -> CatalogEntry:
    for e in CATALOG:
        if e.name == name:
            return e
    raise KeyError(name)


# -- posting through views or decompositions --------------------------------


class ViewPoster:
    """Posts derived propagators by applying view specs to the variables."""

    mode = "views"

    def __init__(self, space):
        self.space = space

    def post(self, factory, args: Sequence[tuple[object, ViewSpec]]):
        views = [spec.apply(var) for var, spec in args]
        return factory(self.space, views)


def _pair(x, spec: ViewSpec | None):
    return (x, spec if spec is not None else IDENTITY)


def coeff_spec(a: int) -> ViewSpec:
    """View spec for multiplying by a nonzero integer coefficient."""
    if a == 0:
        raise ValueError("zero coefficients have no injective view")
    base = IDENTITY if abs(a) == 1 else V.scale(abs(a))
    return V.compose(M, base) if a < 0 else base


def linear(poster, coeffs: Sequence[int], xs: Sequence, rel: str, c: int):
    """sum(a_i * x_i) rel c for rel in '=', '<=', '>=', '!='."""
    args = [(x, coeff_spec(a)) for a, x in zip(coeffs, xs)]
    if rel == "=":
        return poster.post(lambda sp, v: LinearEq(sp, v, c), args)
    if rel == "<=":
        return poster.post(lambda sp, v: LinearLeq(sp, v, c), args)
    if rel == ">=":
        flipped = [(x, V.compose(M, s)) for x, s in args]
        return poster.post(lambda sp, v: LinearLeq(sp, v, -c), flipped)
    if rel == "!=":
        return poster.post(lambda sp, v: LinearNeq(sp, v, c), args)
    raise ValueError(f"unknown relation {rel!r}")


def alldiff(poster, xs: Sequence, offsets: Sequence[int] | None = None, bounds: bool = False):
    """All-different over x_i + offset_i."""
    offsets = offsets or [0] * len(xs)
    args = [(x, V.offset(o) if o else IDENTITY) for x, o in zip(xs, offsets)]
    core = AllDiffBounds if bounds else AllDiffValue
    return poster.post(lambda sp, v: core(sp, v), args)


def maximum(poster, xs: Sequence, z):
    args = [_pair(x, None) for x in xs] + [_pair(z, None)]
    return poster.post(lambda sp, v: MaxN(sp, v[:-1], v[-1]), args)


def minimum(poster, xs: Sequence, z):
    args = [(x, M) for x in xs] + [(z, M)]
    return poster.post(lambda sp, v: MaxN(sp, v[:-1], v[-1]), args)


def equal(poster, x, y, spec_y: ViewSpec = IDENTITY):
    return poster.post(lambda sp, v: Eq(sp, v[0], v[1]), [(x, IDENTITY), (y, spec_y)])


def clause(poster, pos: Sequence, neg: Sequence = ()):
    args = [(x, IDENTITY) for x in pos] + [(x, NEG) for x in neg]
    return poster.post(lambda sp, v: BoolClause(sp, v), args)


def bool_or(poster, xs: Sequence, y):
    args = [(x, IDENTITY) for x in xs] + [(y, IDENTITY)]
    return poster.post(lambda sp, v: BoolOrEq(sp, v[:-1], v[-1]), args)


def bool_and(poster, xs: Sequence, y):
    """(x1 and ... and xn) = y, derived as (not x1 or ... or not xn) = not y."""
    args = [(x, NEG) for x in xs] + [(y, NEG)]
    return poster.post(lambda sp, v: BoolOrEq(sp, v[:-1], v[-1]), args)


def card_geq(poster, xs: Sequence, c: int):
    return poster.post(lambda sp, v: BoolCardGeq(sp, v, c), [(x, IDENTITY) for x in xs])


def card_leq(poster, xs: Sequence, c: int):
    """sum(xs) <= c, derived as sum(not x_i) >= n - c."""
    n = len(xs)
    return poster.post(lambda sp, v: BoolCardGeq(sp, v, n - c), [(x, NEG) for x in xs])


def card_eq(poster, xs: Sequence, c: int):
    card_geq(poster, xs, c)
    card_leq(poster, xs, c)


def reified_linear(poster, xs: Sequence, c: int, b, negate: bool = False):
    args = [(x, IDENTITY) for x in xs] + [(b, NEG if negate else IDENTITY)]
    return poster.post(lambda sp, v: ReifiedLinearEq(sp, v[:-1], c, v[-1]), args)


def set_intersect(poster, x, y, z):
    return poster.post(lambda sp, v: SetIntersect(sp, *v), [(x, I), (y, I), (z, I)])


def set_union(poster, x, y, z, universe: tuple[int, int]):
    c = V.set_complement(*universe)
    return poster.post(lambda sp, v: SetIntersect(sp, *v), [(x, c), (y, c), (z, c)])


def set_diff(poster, x, y, z, universe: tuple[int, int]):
    """x minus y = z, derived as x & complement(y) = z."""
    c = V.set_complement(*universe)
    return poster.post(lambda sp, v: SetIntersect(sp, *v), [(x, I), (y, c), (z, I)])


def disjoint(poster, x, y):
    return poster.post(
        lambda sp, v: SetIntersect(sp, *v), [(x, I), (y, I), (None, V.const_set(()))]
    )


def subset(poster, x, y):
    return poster.post(lambda sp, v: SetSubset(sp, v[0], v[1]), [(x, I), (y, I)])


def member(poster, x, s):
    """Integer x is an element of set s, derived as {x} subset of s."""
    return poster.post(lambda sp, v: SetSubset(sp, v[0], v[1]), [(x, V.singleton_set()), (s, I)])


def set_card(poster, x, lo: int, hi: int, spec: ViewSpec = IDENTITY):
    return poster.post(lambda sp, v: SetCard(sp, v[0], lo, hi), [(x, spec)])
