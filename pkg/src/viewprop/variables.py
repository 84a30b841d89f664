"""Integer, Boolean and set-interval variables.

Variables live in a :class:`~viewprop.engine.Space` and are identified by a
dense index.  Every modifying operation is contracting, returns a
:class:`ModEvent` and tells the space which event kinds fired so that
subscribed propagators get scheduled.
"""

from __future__ import annotations

import enum

from . import iterators as it
from .kernel import EMPTY, BoolDom, RangeSeq, SetDom


class ModEvent(enum.Enum):
    NONE = "none"
    FAILED = "failed"
    ASSIGNED = "assigned"
    BOUNDS = "bounds_changed"
    DOMAIN = "domain_changed"
    GLB = "glb_changed"
    LUB = "lub_changed"


class Ev(enum.IntFlag):
    """Engine-side event kinds used for subscriptions.

    DMC fires on any change of any variable type; LBC/UBC on lower/upper
    bound changes (Booleans fire them on assignment to 1/0); VAL on
    assignment; GLB/LUB on set bound changes.
    """

    NONE = 0
    LBC = 1
    UBC = 2
    DMC = 4
    VAL = 8
    GLB = 16
    LUB = 32


BND = Ev.LBC | Ev.UBC


class ContractViolation(AssertionError):
    """A caller broke an operation precondition (checked spaces only)."""


class IntVar:
    """Integer variable over a canonical range sequence."""

    __slots__ = ("space", "idx", "dom")

    def __init__(self, space, idx: int, dom: RangeSeq):
        self.space, self.idx, self.dom = space, idx, dom

    def __repr__(self) -> str:
        return f"IntVar#{self.idx}{self.dom!r}"

    @property
    def var(self):
        return self

    @property
    def spec(self):
        from .views import IDENTITY

        return IDENTITY

    def base_subscriptions(self, kinds: Ev):
        return [(self, kinds)] if kinds else []

    def rebind(self, space):
        return space.vars[self.idx]

    # -- reads
    def min(self) -> int:
        return self.dom.ranges[0][0]

    def max(self) -> int:
        return self.dom.ranges[-1][1]

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.dom.ranges)

    def assigned(self) -> bool:
        rs = self.dom.ranges
        return len(rs) == 1 and rs[0][0] == rs[0][1]

    def val(self) -> int:
        assert self.assigned()
        return self.dom.ranges[0][0]

    def __contains__(self, v: int) -> bool:
        return v in self.dom

    def getdom(self) -> it.SeqIter:
        return it.SeqIter(self.dom)

    # -- writes
    def _update(self, new: RangeSeq) -> ModEvent:
        old = self.dom
        if new == old:
            return ModEvent.NONE
        if not new:
            self.dom = EMPTY
            self.space.fail()
            return ModEvent.FAILED
        self.dom = new
        kinds = Ev.DMC
        if new.min != old.min:
            kinds |= Ev.LBC
        if new.max != old.max:
            kinds |= Ev.UBC
        me = ModEvent.BOUNDS if kinds & BND else ModEvent.DOMAIN
        if new.min == new.max:
            kinds |= Ev.VAL
            me = ModEvent.ASSIGNED
        self.space.notify(self.idx, kinds)
        return me

    def adjmin(self, n: int) -> ModEvent:
        rs = self.dom.ranges
        if n <= rs[0][0]:
            return ModEvent.NONE
        if n > rs[-1][1]:
            return self._update(EMPTY)
        i = 0
        while rs[i][1] < n:
            i += 1
        first = (max(n, rs[i][0]), rs[i][1])
        return self._update(RangeSeq((first,) + rs[i + 1:]))

    def adjmax(self, n: int) -> ModEvent:
        rs = self.dom.ranges
        if n >= rs[-1][1]:
            return ModEvent.NONE
        if n < rs[0][0]:
            return self._update(EMPTY)
        i = len(rs) - 1
        while rs[i][0] > n:
            i -= 1
        last = (rs[i][0], min(n, rs[i][1]))
        return self._update(RangeSeq(rs[:i] + (last,)))

    def eq(self, n: int) -> ModEvent:
        return self._update(RangeSeq(((n, n),)) if n in self.dom else EMPTY)

    def nq(self, n: int) -> ModEvent:
        if n not in self.dom:
            return ModEvent.NONE
        return self.excdom(it.singleton(n))

    def setdom(self, r) -> ModEvent:
        new = it.to_seq(r)
        if self.space.checked and not new.issubset(self.dom):
            raise ContractViolation(f"setdom({new!r}) is not a subset of {self.dom!r}")
        return self._update(new)

    def adjdom(self, r) -> ModEvent:
        return self._update(it.to_seq(it.Inter(self.getdom(), _as_iter(r))))

    def excdom(self, r) -> ModEvent:
        return self._update(it.to_seq(it.Diff(self.getdom(), _as_iter(r))))

    def snapshot(self) -> RangeSeq:
        return self.dom


_BOTH, _ZERO, _ONE = 2, 0, 1


class BoolVar:
    """Boolean variable: state is 0, 1 or 2 (both values possible)."""

    __slots__ = ("space", "idx", "state")

    def __init__(self, space, idx: int, state: int = _BOTH):
        self.space, self.idx, self.state = space, idx, state

    def __repr__(self) -> str:
        return f"BoolVar#{self.idx}[{'01*'[self.state]}]"

    @property
    def var(self):
        return self

    @property
    def spec(self):
        from .views import IDENTITY

        return IDENTITY

    def base_subscriptions(self, kinds: Ev):
        return [(self, kinds)] if kinds else []

    def rebind(self, space):
        return space.vars[self.idx]

    def is_assigned(self) -> bool:
        return self.state != _BOTH

    assigned = is_assigned

    def value(self) -> int:
        assert self.state != _BOTH
        return self.state

    def can(self, v: int) -> bool:
        return self.state == _BOTH or self.state == v

    def _assign(self, v: int) -> ModEvent:
        if self.state == v:
            return ModEvent.NONE
        if self.state != _BOTH:
            self.state = -1
            self.space.fail()
            return ModEvent.FAILED
        self.state = v
        self.space.notify(self.idx, Ev.VAL | Ev.DMC | (Ev.LBC if v == 1 else Ev.UBC))
        return ModEvent.ASSIGNED

    def zero(self) -> ModEvent:
        return self._assign(_ZERO)

    def one(self) -> ModEvent:
        return self._assign(_ONE)

    def snapshot(self) -> BoolDom:
        if self.state == -1:
            return BoolDom(False, False)
        return BoolDom(self.state != _ONE, self.state != _ZERO)


class SetVar:
    """Set variable approximated by the interval [glb, lub]."""

    __slots__ = ("space", "idx", "glb", "lub")

    def __init__(self, space, idx: int, glb: RangeSeq, lub: RangeSeq):
        self.space, self.idx, self.glb, self.lub = space, idx, glb, lub

    def __repr__(self) -> str:
        return f"SetVar#{self.idx}[{self.glb!r}..{self.lub!r}]"

    @property
    def var(self):
        return self

    @property
    def spec(self):
        from .views import IDENTITY

        return IDENTITY

    def base_subscriptions(self, kinds: Ev):
        return [(self, kinds)] if kinds else []

    def rebind(self, space):
        return space.vars[self.idx]

    def assigned(self) -> bool:
        return self.glb == self.lub

    def getglb(self) -> it.SeqIter:
        return it.SeqIter(self.glb)

    def getlub(self) -> it.SeqIter:
        return it.SeqIter(self.lub)

    def _fail(self) -> ModEvent:
        self.glb, self.lub = RangeSeq(((1, 1),)), EMPTY
        self.space.fail()
        return ModEvent.FAILED

    def adjglb(self, r) -> ModEvent:
        new = it.to_seq(it.Union(self.getglb(), _as_iter(r)))
        if new == self.glb:
            return ModEvent.NONE
        if not new.issubset(self.lub):
            return self._fail()
        self.glb = new
        return self._changed(Ev.GLB, ModEvent.GLB)

    def adjlub(self, r) -> ModEvent:
        new = it.to_seq(it.Inter(self.getlub(), _as_iter(r)))
        if new == self.lub:
            return ModEvent.NONE
        if not self.glb.issubset(new):
            return self._fail()
        self.lub = new
        return self._changed(Ev.LUB, ModEvent.LUB)

    def _changed(self, kind: Ev, me: ModEvent) -> ModEvent:
        kinds = kind | Ev.DMC
        if self.glb == self.lub:
            kinds |= Ev.VAL
            me = ModEvent.ASSIGNED
        self.space.notify(self.idx, kinds)
        return me

    def include(self, v: int) -> ModEvent:
        return self.adjglb(it.singleton(v))

    def exclude(self, v: int) -> ModEvent:
        if v not in self.lub:
            return ModEvent.NONE
        return self.adjlub(it.Diff(self.getlub(), it.singleton(v)))

    def snapshot(self) -> SetDom:
        return SetDom(self.glb, self.lub)


def _as_iter(r):
    if isinstance(r, RangeSeq):
        return it.SeqIter(r)
    return r
