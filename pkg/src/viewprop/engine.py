"""Propagators, event-driven scheduling, fixpoint computation and copying.

A :class:`Space` owns variables and propagators.  Propagators subscribe to
event sets on variables or views; a subscription through a view is
translated to an event set on the base variable.  ``fixpoint()`` runs
scheduled propagators until none is pending, removing subsumed ones.
Search explores alternatives by copying spaces.
"""

from __future__ import annotations

import copy as _copy
import enum
from collections import deque
from typing import Iterable

from .kernel import BoolDom, DomainMap, RangeSeq
from .variables import BoolVar, ContractViolation, Ev, IntVar, ModEvent, SetVar


class PropStatus(enum.Enum):
    FAILED = "failed"
    AT_FIXPOINT = "at_fixpoint"
    NOT_AT_FIXPOINT = "not_at_fixpoint"
    SUBSUMED = "subsumed"


class SpaceStatus(enum.Enum):
    STABLE = "stable"
    FAILED = "failed"


class Fail(Exception):
    """Raised inside ``propagate()`` to abort with failure."""


class Propagator:
    """Base class for propagators.

    Subclasses implement ``propagate()`` and list the attributes holding
    views (single views or lists of views) in ``view_fields`` so that copies
    can be rebound to a new space.  Writes should go through :meth:`check`,
    which turns a failed modification event into a :class:`Fail` exception.
    """

    view_fields: tuple[str, ...] = ()

    def __init__(self, space: Space):
        self.space = space
        self.subscriptions: list[tuple[object, Ev]] = []
        self.pid = space._register(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}#{self.pid}"

    def subscribe(self, view, kinds: Ev) -> None:
        self.space.subscribe(self, view, kinds)

    def unsubscribe(self, view, kinds: Ev) -> None:
        self.space.unsubscribe(self, view, kinds)

    @staticmethod
    def check(me: ModEvent) -> ModEvent:
        if me is ModEvent.FAILED:
            raise Fail
        return me

    def propagate(self) -> PropStatus:
        raise NotImplementedError

    def run(self) -> PropStatus:
        try:
            st = self.propagate()
        except Fail:
            return PropStatus.FAILED
        if self.space.failed:
            return PropStatus.FAILED
        return st

    def on_copy(self) -> None:
        """Hook for rebuilding derived state after copying."""

    def copy_to(self, space: Space) -> Propagator:
        clone = _copy.copy(self)
        clone.space = space
        for name in self.view_fields:
            v = getattr(self, name)
            if isinstance(v, (list, tuple)):
                setattr(clone, name, type(v)(x.rebind(space) for x in v))
            else:
                setattr(clone, name, v.rebind(space))
        clone.subscriptions = [(v.rebind(space), k) for v, k in self.subscriptions]
        clone.on_copy()
        return clone


class Space:
    """One propagation problem: variables, propagators and the event queue.

    ``checked`` enables contract checks (setdom preconditions, propagator
    contraction).  ``remove_subsumed`` can be switched off to compare runs.
    ``rng`` (a ``random.Random``) replaces FIFO order with random picks.
    """

    def __init__(self, checked: bool = False, remove_subsumed: bool = True, rng=None):
        self.checked = checked
        self.remove_subsumed = remove_subsumed
        self.rng = rng
        self.vars: list = []
        self.props: dict[int, Propagator] = {}
        self.subs: list[list[tuple[int, Ev]]] = []
        self.queue: deque[int] = deque()
        self.queued: set[int] = set()
        self.failed = False
        self.propagations = 0
        self._next_pid = 0
        self._running: int | None = None
        self._self_woken = False

    # -- variables
    def _add_var(self, v):
        self.vars.append(v)
        self.subs.append([])
        return v

    def int_var(self, lo: int | Iterable[int] | RangeSeq, hi: int | None = None) -> IntVar:
        """``int_var(lo, hi)``, ``int_var(values)`` or ``int_var(range_seq)``."""
        if isinstance(lo, RangeSeq):
            dom = lo
        elif hi is not None:
            dom = RangeSeq.interval(lo, hi)
        else:
            dom = RangeSeq.from_values(lo)
        v = self._add_var(IntVar(self, len(self.vars), dom))
        if not dom:
            self.fail()
        return v

    def bool_var(self, value: int | None = None) -> BoolVar:
        return self._add_var(BoolVar(self, len(self.vars), 2 if value is None else value))

    def set_var(self, glb: Iterable[int] | RangeSeq = (), lub: Iterable[int] | RangeSeq = ()) -> SetVar:
        g = glb if isinstance(glb, RangeSeq) else RangeSeq.from_values(glb)
        l_ = lub if isinstance(lub, RangeSeq) else RangeSeq.from_values(lub)
        v = self._add_var(SetVar(self, len(self.vars), g, l_))
        if not g.issubset(l_):
            self.fail()
        return v

    # -- propagators and subscriptions
    def _register(self, p: Propagator) -> int:
        pid = self._next_pid
        self._next_pid += 1
        self.props[pid] = p
        self.schedule(pid)
        return pid

    def subscribe(self, p: Propagator, view, kinds: Ev, schedule: bool = True) -> None:
        if hasattr(view, "attach"):
            view.attach(self)
        base = list(view.base_subscriptions(kinds))
        for var, k in base:
            self.subs[var.idx].append((p.pid, k))
        # constant views never fire, so there is nothing to declare
        if base:
            p.subscriptions.append((view, kinds))
        if schedule:
            self.schedule(p.pid)

    def unsubscribe(self, p: Propagator, view, kinds: Ev) -> None:
        for var, k in view.base_subscriptions(kinds):
            self.subs[var.idx].remove((p.pid, k))
        for i, (v, k) in enumerate(p.subscriptions):
            if k == kinds and (v is view or (v.var is view.var and v.spec == view.spec)):
                del p.subscriptions[i]
                break

    def dispose(self, pid: int) -> None:
        p = self.props.pop(pid)
        for view, kinds in list(p.subscriptions):
            self.unsubscribe(p, view, kinds)
        self.queued.discard(pid)

    def schedule(self, pid: int) -> None:
        if pid not in self.queued:
            self.queued.add(pid)
            self.queue.append(pid)

    def notify(self, idx: int, kinds: Ev) -> None:
        for pid, k in self.subs[idx]:
            if k & kinds:
                if pid == self._running:
                    self._self_woken = True
                else:
                    self.schedule(pid)

    def fail(self) -> None:
        self.failed = True

    # -- propagation
    def _pop(self) -> int:
        if self.rng is None:
            pid = self.queue.popleft()
        else:
            i = self.rng.randrange(len(self.queue))
            self.queue.rotate(-i)
            pid = self.queue.popleft()
            self.queue.rotate(i)
        self.queued.discard(pid)
        return pid

    def run_once(self, p: Propagator) -> PropStatus:
        """Run one propagator once, with counting and contract checks."""
        before = self.domains() if self.checked else None
        self._running, self._self_woken = p.pid, False
        try:
            st = p.run()
        finally:
            self._running = None
        self.propagations += 1
        if st is PropStatus.FAILED:
            self.failed = True
        if before is not None and not self.failed:
            _check_contracting(before, self.domains(), p)
        return st

    def fixpoint(self) -> SpaceStatus:
        if self.failed:
            self._clear_queue()
            return SpaceStatus.FAILED
        while self.queue:
            pid = self._pop()
            p = self.props.get(pid)
            if p is None:
                continue
            st = self.run_once(p)
            if self.failed:
                self._clear_queue()
                return SpaceStatus.FAILED
            if st is PropStatus.SUBSUMED:
                if self.remove_subsumed:
                    self.dispose(pid)
            elif st is PropStatus.NOT_AT_FIXPOINT and self._self_woken:
                self.schedule(pid)
        return SpaceStatus.STABLE

    status = fixpoint

    def _clear_queue(self) -> None:
        self.queue.clear()
        self.queued.clear()

    # -- inspection and copying
    def domains(self) -> DomainMap:
        return DomainMap({v.idx: v.snapshot() for v in self.vars}, self.failed)

    def assigned(self) -> bool:
        return all(v.assigned() for v in self.vars)

    def copy(self) -> Space:
        c = Space.__new__(Space)
        c.checked, c.remove_subsumed, c.rng = self.checked, self.remove_subsumed, self.rng
        c.vars = []
        for v in self.vars:
            nv = _copy.copy(v)
            nv.space = c
            c.vars.append(nv)
        c.subs = [list(s) for s in self.subs]
        c.queue, c.queued = deque(self.queue), set(self.queued)
        c.failed, c.propagations = self.failed, self.propagations
        c._next_pid, c._running, c._self_woken = self._next_pid, None, False
        c.props = {}
        for pid, p in self.props.items():
            c.props[pid] = p.copy_to(c)
        return c


def _check_contracting(before: DomainMap, after: DomainMap, p: Propagator) -> None:
    for idx, old in before.doms.items():
        new = after.doms[idx]
        if isinstance(old, RangeSeq):
            ok = new.issubset(old)
        elif isinstance(old, BoolDom):
            ok = new.values() <= old.values()
        else:
            ok = old.glb.issubset(new.glb) and new.lub.issubset(old.lub)
        if not ok:
            raise ContractViolation(f"{p!r} widened variable {idx}: {old!r} -> {new!r}")


__all__ = ["Fail", "PropStatus", "Propagator", "Space", "SpaceStatus"]
