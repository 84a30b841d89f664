"""Set-interval propagators.

Written against the set view interface (getglb/getlub/adjglb/adjlub), so
complement, singleton and constant set views can be substituted for any
argument.
"""

from __future__ import annotations

from .. import iterators as it
from ..engine import Fail, PropStatus, Propagator
from ..kernel import RangeSeq, seq_cardinality
from ..variables import Ev, ModEvent

NONE = ModEvent.NONE
BOUNDS = Ev.GLB | Ev.LUB


def glb(x) -> RangeSeq:
    return it.to_seq(x.getglb())


def lub(x) -> RangeSeq:
    return it.to_seq(x.getlub())


def _compl_in_hull(r, around: RangeSeq):
    """Complement of ``r`` relative to the hull of ``around``."""
    if not around:
        return it.empty()
    s = it.to_seq(it.Inter(r, it.singleton(around.min, around.max)))
    return it.Compl(it.SeqIter(s), (around.min, around.max))


class SetIntersect(Propagator):
    """x & y = z on set intervals."""

    view_fields = ("x", "y", "z")

    def __init__(self, space, x, y, z):
        self.x, self.y, self.z = x, y, z
        super().__init__(space)
        for v in (x, y, z):
            self.subscribe(v, BOUNDS)

    def propagate(self) -> PropStatus:
        x, y, z = self.x, self.y, self.z
        chk = self.check
        changed = True
        while changed:
            ch = [
                chk(z.adjglb(it.Inter(x.getglb(), y.getglb()))),
                chk(z.adjlub(it.Inter(x.getlub(), y.getlub()))),
                chk(x.adjglb(z.getglb())),
                chk(y.adjglb(z.getglb())),
            ]
            # values surely in y but not possibly in z cannot be in x, and vice versa
            lx = lub(x)
            ch.append(chk(x.adjlub(_compl_in_hull(it.Diff(y.getglb(), z.getlub()), lx))))
            ly = lub(y)
            ch.append(chk(y.adjlub(_compl_in_hull(it.Diff(x.getglb(), z.getlub()), ly))))
            changed = any(me is not NONE for me in ch)
        if x.assigned() and y.assigned() and z.assigned():
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class SetSubset(Propagator):
    """x is a subset of y."""

    view_fields = ("x", "y")

    def __init__(self, space, x, y):
        self.x, self.y = x, y
        super().__init__(space)
        self.subscribe(x, Ev.GLB)
        self.subscribe(y, Ev.LUB)

    def propagate(self) -> PropStatus:
        x, y = self.x, self.y
        changed = True
        while changed:
            a = self.check(y.adjglb(x.getglb()))
            b = self.check(x.adjlub(y.getlub()))
            changed = a is not NONE or b is not NONE
        if lub(x).issubset(glb(y)):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class SetEq(Propagator):
    """x = y on set intervals."""

    view_fields = ("x", "y")

    def __init__(self, space, x, y):
        self.x, self.y = x, y
        super().__init__(space)
        self.subscribe(x, BOUNDS)
        self.subscribe(y, BOUNDS)

    def propagate(self) -> PropStatus:
        x, y = self.x, self.y
        changed = True
        while changed:
            ch = [
                self.check(x.adjglb(y.getglb())),
                self.check(y.adjglb(x.getglb())),
                self.check(x.adjlub(y.getlub())),
                self.check(y.adjlub(x.getlub())),
            ]
            changed = any(me is not NONE for me in ch)
        if x.assigned():
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class SetCard(Propagator):
    """lo <= |x| <= hi."""

    view_fields = ("x",)

    def __init__(self, space, x, lo: int, hi: int):
        self.x, self.lo, self.hi = x, lo, hi
        super().__init__(space)
        self.subscribe(x, BOUNDS)

    def propagate(self) -> PropStatus:
        x = self.x
        g, l_ = glb(x), lub(x)
        ng, nl = seq_cardinality(g), seq_cardinality(l_)
        if ng > self.hi or nl < self.lo:
            raise Fail
        if nl == self.lo:
            self.check(x.adjglb(it.SeqIter(l_)))
        elif ng == self.hi:
            self.check(x.adjlub(it.SeqIter(g)))
        if x.assigned() or (self.lo <= ng and nl <= self.hi):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT
