"""Integer propagators.

Every propagator here is written against the integer view interface only,
so each accepts plain variables or any integer-valued view (offset, minus,
scale, constant, int_of_bool and compositions).  All of them iterate to a
local fixpoint and report ``AT_FIXPOINT`` unless subsumed.
"""

from __future__ import annotations

from typing import Sequence

from .. import iterators as it
from ..engine import Fail, PropStatus, Propagator
from ..kernel import RangeSeq
from ..variables import BND, Ev, ModEvent

NONE = ModEvent.NONE


def dom(x) -> RangeSeq:
    return it.to_seq(x.getdom())


class Eq(Propagator):
    """x = y, domain-complete."""

    view_fields = ("x", "y")

    def __init__(self, space, x, y):
        self.x, self.y = x, y
        super().__init__(space)
        self.subscribe(x, Ev.DMC)
        self.subscribe(y, Ev.DMC)

    def propagate(self) -> PropStatus:
        common = it.to_seq(it.Inter(self.x.getdom(), self.y.getdom()))
        if not common:
            raise Fail
        self.check(self.x.adjdom(common))
        self.check(self.y.adjdom(common))
        return PropStatus.SUBSUMED if self.x.assigned() else PropStatus.AT_FIXPOINT


class LinearEq(Propagator):
    """sum(xs) = c, bounds(Z)-complete for unit coefficients."""

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence, c: int):
        self.xs, self.c = list(xs), c
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, BND)

    def propagate(self) -> PropStatus:
        _linear_bounds(self, self.xs, self.c)
        if all(x.assigned() for x in self.xs):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class LinearLeq(Propagator):
    """sum(xs) <= c, bounds(Z)-complete for unit coefficients."""

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence, c: int):
        self.xs, self.c = list(xs), c
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, Ev.LBC)

    def propagate(self) -> PropStatus:
        xs, c = self.xs, self.c
        lo = sum(x.min() for x in xs)
        if lo > c:
            raise Fail
        for x in xs:
            self.check(x.adjmax(c - (lo - x.min())))
        if sum(x.max() for x in xs) <= c:
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class LinearNeq(Propagator):
    """sum(xs) != c, domain-complete: prunes once a single variable is left."""

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence, c: int):
        self.xs, self.c = list(xs), c
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, Ev.VAL)

    def propagate(self) -> PropStatus:
        return _neq(self, self.xs, self.c)


def _neq(p: Propagator, xs, c: int) -> PropStatus:
    free = [x for x in xs if not x.assigned()]
    if len(free) > 1:
        return PropStatus.AT_FIXPOINT
    fixed = sum(x.min() for x in xs if x.assigned())
    if not free:
        if fixed == c:
            raise Fail
        return PropStatus.SUBSUMED
    p.check(free[0].nq(c - fixed))
    return PropStatus.SUBSUMED


def _linear_bounds(p: Propagator, xs, c: int) -> None:
    changed = True
    while changed:
        changed = False
        lo = sum(x.min() for x in xs)
        hi = sum(x.max() for x in xs)
        for x in xs:
            xmin, xmax = x.min(), x.max()
            a = p.check(x.adjmin(c - (hi - xmax)))
            b = p.check(x.adjmax(c - (lo - xmin)))
            if a is not NONE or b is not NONE:
                changed = True
                lo += x.min() - xmin
                hi += x.max() - xmax


class ReifiedLinearEq(Propagator):
    """(sum(xs) = c) <-> b.

    With b = 1 the bounds rules of :class:`LinearEq` apply, with b = 0 those
    of :class:`LinearNeq`.  While b is open it is decided from the bounds
    of the sum only (entailed when the sum is fixed to c, dis-entailed when
    c lies outside [sum of mins, sum of maxs]).
    """

    view_fields = ("xs", "b")

    def __init__(self, space, xs: Sequence, c: int, b):
        self.xs, self.c, self.b = list(xs), c, b
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, BND | Ev.VAL)
        self.subscribe(b, Ev.VAL)

    def propagate(self) -> PropStatus:
        xs, c, b = self.xs, self.c, self.b
        if not b.is_assigned():
            lo = sum(x.min() for x in xs)
            hi = sum(x.max() for x in xs)
            if lo == hi == c:
                self.check(b.one())
                return PropStatus.SUBSUMED
            if c < lo or c > hi:
                self.check(b.zero())
                return PropStatus.SUBSUMED
            return PropStatus.AT_FIXPOINT
        if b.value() == 1:
            _linear_bounds(self, xs, c)
            return PropStatus.SUBSUMED if all(x.assigned() for x in xs) else PropStatus.AT_FIXPOINT
        return _neq(self, xs, c)


class MaxN(Propagator):
    """max(xs) = z, bounds(Z)-complete."""

    view_fields = ("xs", "z")

    def __init__(self, space, xs: Sequence, z):
        self.xs, self.z = list(xs), z
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, BND)
        self.subscribe(z, BND)

    def propagate(self) -> PropStatus:
        xs, z = self.xs, self.z
        changed = True
        while changed:
            ch = [
                self.check(z.adjmin(max(x.min() for x in xs))),
                self.check(z.adjmax(max(x.max() for x in xs))),
            ]
            zmax, zmin = z.max(), z.min()
            for x in xs:
                ch.append(self.check(x.adjmax(zmax)))
            reach = [x for x in xs if x.max() >= zmin]
            if not reach:
                raise Fail
            if len(reach) == 1:
                # only one argument can still be the maximum
                ch.append(self.check(reach[0].adjmin(zmin)))
            changed = any(me is not NONE for me in ch)
        if z.assigned() and all(x.assigned() for x in xs):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


def max2(space, x, y, z) -> MaxN:
    return MaxN(space, (x, y), z)


class AllDiffValue(Propagator):
    """All-different by removing assigned values from the other variables."""

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence):
        self.xs = list(xs)
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, Ev.VAL)

    def propagate(self) -> PropStatus:
        xs = self.xs
        done = [False] * len(xs)
        progress = True
        while progress:
            progress = False
            for i, x in enumerate(xs):
                if done[i] or not x.assigned():
                    continue
                done[i] = progress = True
                v = x.min()
                for j, y in enumerate(xs):
                    if j != i:
                        self.check(y.nq(v))
        if all(done):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class AllDiffBounds(Propagator):
    """All-different, bounds(Z)-complete via Hall intervals (quadratic sweep)."""

    view_fields = ("xs",)

    def __init__(self, space, xs: Sequence):
        self.xs = list(xs)
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, BND)

    def _sweep(self) -> bool:
        xs = self.xs
        lo = [x.min() for x in xs]
        hi = [x.max() for x in xs]
        for a in sorted(set(lo)):
            for b in sorted(set(hi)):
                if b < a:
                    continue
                inside = [i for i in range(len(xs)) if a <= lo[i] and hi[i] <= b]
                if len(inside) > b - a + 1:
                    raise Fail
                if len(inside) < b - a + 1:
                    continue
                # [a, b] is a Hall interval: nobody else may take its values
                changed = False
                members = set(inside)
                for j, x in enumerate(xs):
                    if j in members:
                        continue
                    if a <= lo[j] <= b:
                        changed |= self.check(x.adjmin(b + 1)) is not NONE
                    if a <= hi[j] <= b:
                        changed |= self.check(x.adjmax(a - 1)) is not NONE
                if changed:
                    return True
        return False

    def propagate(self) -> PropStatus:
        while self._sweep():
            pass
        if all(x.assigned() for x in self.xs):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class ElementConst(Propagator):
    """a[x] = y for a constant integer array a, domain-complete."""

    view_fields = ("x", "y")

    def __init__(self, space, a: Sequence[int], x, y):
        self.a, self.x, self.y = tuple(a), x, y
        super().__init__(space)
        self.subscribe(x, Ev.DMC)
        self.subscribe(y, Ev.DMC)

    def propagate(self) -> PropStatus:
        a, x, y = self.a, self.x, self.y
        ydom = dom(y)
        idx = [i for i in dom(x).values() if 0 <= i < len(a) and a[i] in ydom]
        if not idx:
            raise Fail
        self.check(x.adjdom(RangeSeq.from_values(idx)))
        self.check(y.adjdom(RangeSeq.from_values(a[i] for i in idx)))
        return PropStatus.SUBSUMED if x.assigned() else PropStatus.AT_FIXPOINT
