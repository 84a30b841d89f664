"""Boolean propagators over Boolean variables or negation views.

Clauses and cardinality constraints watch only a few literals and move
their subscriptions when a watched literal becomes 0.  Watches are rebuilt
from scratch when a space is copied.
"""

from __future__ import annotations

from typing import Sequence

from ..engine import Fail, PropStatus, Propagator
from ..variables import Ev


def is_one(b) -> bool:
    return not b.can(0)


def is_zero(b) -> bool:
    return not b.can(1)


class _Watching(Propagator):
    """Keeps ``nwatch`` literals that can still be 1 under VAL subscriptions."""

    view_fields = ("xs",)
    nwatch = 2

    def _init_watches(self, schedule: bool = True) -> None:
        self.watches: list[int] = []
        for i, x in enumerate(self.xs):
            if len(self.watches) == self.nwatch:
                break
            if x.can(1):
                self.watches.append(i)
                self.space.subscribe(self, x, Ev.VAL, schedule=schedule)

    def _refresh_watches(self) -> None:
        """Replace watched literals that became 0, dropping them if no replacement exists."""
        xs = self.xs
        watched = set(self.watches)
        cand = (j for j in range(len(xs)) if j not in watched)
        kept = []
        for i in self.watches:
            if xs[i].can(1):
                kept.append(i)
                continue
            self.unsubscribe(xs[i], Ev.VAL)
            for j in cand:
                if xs[j].can(1):
                    kept.append(j)
                    self.subscribe(xs[j], Ev.VAL)
                    break
        self.watches = kept

    def on_copy(self) -> None:
        for view, kinds in list(self.subscriptions):
            self.space.unsubscribe(self, view, kinds)
        self._init_watches(schedule=False)


class BoolClause(_Watching):
    """At least one literal is 1, with two watched literals."""

    def __init__(self, space, xs: Sequence):
        self.xs = list(xs)
        super().__init__(space)
        self._init_watches()

    def propagate(self) -> PropStatus:
        xs = self.xs
        if any(is_one(xs[i]) for i in self.watches):
            return PropStatus.SUBSUMED
        self._refresh_watches()
        if not self.watches:
            raise Fail
        if len(self.watches) == 1:
            self.check(xs[self.watches[0]].one())
            return PropStatus.SUBSUMED
        if any(is_one(xs[i]) for i in self.watches):
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class BoolCardGeq(_Watching):
    """At least c literals are 1, with c + 1 watched literals."""

    def __init__(self, space, xs: Sequence, c: int):
        self.xs, self.c = list(xs), c
        self.nwatch = max(c + 1, 0)
        super().__init__(space)
        if c > 0:
            self._init_watches()

    def propagate(self) -> PropStatus:
        xs, c = self.xs, self.c
        if c <= 0:
            return PropStatus.SUBSUMED
        self._refresh_watches()
        if len(self.watches) < c:
            raise Fail
        if len(self.watches) == c:
            # exactly c literals can still be 1: all of them must be
            for i in self.watches:
                self.check(xs[i].one())
            return PropStatus.SUBSUMED
        if sum(is_one(x) for x in xs) >= c:
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


class BoolOrEq(Propagator):
    """(x1 or ... or xn) = y, domain-complete."""

    view_fields = ("xs", "y")

    def __init__(self, space, xs: Sequence, y):
        self.xs, self.y = list(xs), y
        super().__init__(space)
        for x in self.xs:
            self.subscribe(x, Ev.VAL)
        self.subscribe(y, Ev.VAL)

    def propagate(self) -> PropStatus:
        xs, y = self.xs, self.y
        if any(is_one(x) for x in xs):
            self.check(y.one())
            return PropStatus.SUBSUMED
        if is_zero(y):
            for x in xs:
                self.check(x.zero())
            return PropStatus.SUBSUMED
        open_ = [x for x in xs if not x.is_assigned()]
        if not open_:
            self.check(y.zero())
            return PropStatus.SUBSUMED
        if is_one(y) and len(open_) == 1:
            self.check(open_[0].one())
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT
