"""Extensional constraints, domain relaxation and complete reference propagators."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence

from ..engine import Fail, PropStatus, Propagator, Space
from ..kernel import DomainMap, ExtensionalConstraint, RangeSeq
from ..variables import Ev
from . import domains as D

DOMAIN, RANGE, BOUNDS_D, BOUNDS_Z = "domain", "range", "boundsD", "boundsZ"
COMPLETENESS_LEVELS = (DOMAIN, RANGE, BOUNDS_D, BOUNDS_Z)


def relax(kinds: Sequence[str], tuples) -> D.Dom | None:
    """Strongest domain containing every tuple (per-variable projections)."""
    tuples = list(tuples)
    if not tuples:
        return None
    cols = [frozenset(t[i] for t in tuples) for i in range(len(kinds))]
    return tuple(D.var_hull(k, s) if k == D.SET else s for k, s in zip(kinds, cols))


def dom_relax(c: ExtensionalConstraint, kinds: Sequence[str] | None = None) -> DomainMap:
    kinds = kinds or [D.INT] * len(c.scope)
    d = relax(kinds, c.tuples)
    if d is None:
        return DomainMap({}, failed=True)
    return DomainMap(dict(zip(c.scope, d)))


def restrict(tuples, d: D.Dom | None) -> list[tuple]:
    if d is None:
        return []
    return [t for t in tuples if all(v in s for v, s in zip(t, d))]


def complete_propagator(tuples, level: str, kinds: Sequence[str]) -> Callable[[D.Dom], D.Dom | None]:
    """The unique propagator of the given completeness level for the constraint."""
    tuples = list(tuples.tuples if isinstance(tuples, ExtensionalConstraint) else tuples)

    def run(d):
        if d is None:
            return None
        if level == DOMAIN:
            return relax(kinds, restrict(tuples, d))
        if level == RANGE:
            return relax(kinds, restrict(tuples, D.hull(kinds, d)))
        if level == BOUNDS_D:
            return D.hull(kinds, relax(kinds, restrict(tuples, d)))
        if level == BOUNDS_Z:
            return D.hull(kinds, relax(kinds, restrict(tuples, D.hull(kinds, d))))
        raise ValueError(f"unknown completeness level {level!r}")

    return run


def engine_function(post, kinds: Sequence[str], specs=None) -> Callable[[D.Dom], tuple]:
    """Wrap an engine propagator as a function on explicit domains.

    ``post(space, views)`` creates the propagator.  Returns ``d -> (result,
    status)`` where one ``propagate()`` call is performed in a checked space.
    """

    def run(d):
        if d is None:
            return None, PropStatus.FAILED
        sp = Space(checked=True)
        xs = D.build_vars(sp, kinds, d)
        views = list(xs) if specs is None else _apply(specs, xs)
        p = post(sp, views)
        st = sp.run_once(p)
        return D.read_vars(sp, kinds, xs), st

    return run


def _apply(specs, xs):
    it_x = iter(xs)
    return [s.apply(None) if s.is_constant else s.apply(next(it_x)) for s in specs]


def induced_constraint(run, kinds: Sequence[str], universes: Sequence[Sequence]) -> ExtensionalConstraint:
    """{a | p({a}) = {a}} for a function ``run(d) -> domain``."""
    acc = []
    for a in D.assignments(kinds, universes):
        one = D.singleton(a)
        out = run(one)
        if isinstance(out, tuple) and len(out) == 2 and not isinstance(out[0], frozenset):
            out = out[0]
        if out == one:
            acc.append(a)
    return ExtensionalConstraint(tuple(range(len(kinds))), frozenset(acc))


class Extensional(Propagator):
    """Domain-complete propagator for an arbitrary relation.

    ``accept`` is either an :class:`ExtensionalConstraint` (tuples in
    argument order) or a predicate over argument values.  Supports integer,
    Boolean and set arguments (set arguments are narrowed to interval hulls).
    """

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence, kinds: Sequence[str], accept):
        self.xs, self.kinds = list(xs), tuple(kinds)
        if isinstance(accept, ExtensionalConstraint):
            table = accept.tuples
            self.accept = lambda *t: t in table
        else:
            self.accept = accept
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, Ev.DMC)

    def _values(self, x, kind):
        if kind == D.INT:
            return frozenset(v for lo, hi in x.getdom() for v in range(lo, hi + 1))
        if kind == D.BOOL:
            return frozenset(v for v in (0, 1) if x.can(v))
        glb = frozenset(v for lo, hi in x.getglb() for v in range(lo, hi + 1))
        lub = frozenset(v for lo, hi in x.getlub() for v in range(lo, hi + 1))
        return D.interval(glb, lub)

    def propagate(self) -> PropStatus:
        cur = tuple(self._values(x, k) for x, k in zip(self.xs, self.kinds))
        import itertools

        sols = [t for t in itertools.product(*cur) if self.accept(*t)]
        new = relax(self.kinds, sols)
        if new is None:
            raise Fail
        for x, k, s in zip(self.xs, self.kinds, new):
            if k == D.INT:
                self.check(x.adjdom(RangeSeq.from_values(s)))
            elif k == D.BOOL:
                if s == {0}:
                    self.check(x.zero())
                elif s == {1}:
                    self.check(x.one())
            else:
                glb, lub = frozenset.intersection(*s), frozenset.union(*s)
                self.check(x.adjglb(RangeSeq.from_values(glb)))
                self.check(x.adjlub(RangeSeq.from_values(lub)))
        if all(len(s) == 1 for s in new):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


# -- real relaxation of linear constraints -----------------------------------


def linear_real_box(coeffs: Sequence[int], rel: str, rhs: int, box: Sequence[tuple[int, int]]):
    """Exact projection of {x in box (reals) | sum a_i x_i rel rhs} onto each axis.

    Returns a list of (lo, hi) Fractions, or None if the real relaxation is
    infeasible.  ``rel`` is '=' or '<='.
    """
    terms = []
    for a, (lo, hi) in zip(coeffs, box):
        terms.append((Fraction(min(a * lo, a * hi)), Fraction(max(a * lo, a * hi))))
    smin = sum(t[0] for t in terms)
    smax = sum(t[1] for t in terms)
    if smin > rhs or (rel == "=" and smax < rhs):
        return None
    out = []
    for a, (lo, hi), (m, big_m) in zip(coeffs, box, terms):
        others_min, others_max = smin - m, smax - big_m
        t_hi = min(big_m, rhs - others_min)
        t_lo = max(m, rhs - others_max) if rel == "=" else m
        x1, x2 = t_lo / a, t_hi / a
        out.append((min(x1, x2), max(x1, x2)))
    return out


def bounds_r_contains(coeffs, rel, rhs, d: D.Dom, result: D.Dom | None) -> bool:
    """Whether ``result`` lies within the real-relaxation bounds of ``d``."""
    box = [(min(s), max(s)) for s in d]
    proj = linear_real_box(coeffs, rel, rhs, box)
    if proj is None:
        return result is None
    if result is None:
        return True
    for s, (lo, hi) in zip(result, proj):
        if any(v < lo or v > hi for v in s):
            return False
    return True


def integer_points(lo: Fraction, hi: Fraction) -> range:
    return range(math.ceil(lo), math.floor(hi) + 1)
