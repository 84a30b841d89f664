"""Instrumented checks that event subscriptions through views never miss a wakeup.

A wakeup is missed when, after a single domain mutation and a fixpoint run,
some propagator left in the space could still prune (or fail) if it were
run.  The check enumerates small domains, propagates to a fixpoint, applies
every single mutation to a copy, and re-runs each propagator on a further
copy.  Dropping one declared subscription must make such a miss observable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .. import iterators as it
from ..engine import Space, SpaceStatus
from ..propagators.catalog import CatalogEntry, Variant
from ..variables import Ev
from ..views import ViewSpec
from . import domains as D
from .theorems import Lab, lab


@dataclass
class EventReport:
    entry: str
    variant: str
    domains: int = 0
    mutations: int = 0
    misses: list[str] = field(default_factory=list)

    @property
    def sound(self) -> bool:
        return not self.misses


def _values(r) -> list[int]:
    return [v for lo, hi in r for v in range(lo, hi + 1)]


def mutations(space: Space, idx: int) -> Iterator[tuple[str, Callable]]:
    """Every single-step mutation of variable ``idx`` that keeps it non-empty."""
    x = space.vars[idx]
    if hasattr(x, "getlub"):
        for e in _values(it.Diff(x.getlub(), x.getglb())):
            yield f"x{idx} include {e}", lambda s, e=e: s.vars[idx].include(e)
            yield f"x{idx} exclude {e}", lambda s, e=e: s.vars[idx].exclude(e)
    elif hasattr(x, "getdom"):
        vs = _values(x.getdom())
        if len(vs) < 2:
            return
        for v in vs:
            yield f"x{idx} != {v}", lambda s, v=v: s.vars[idx].nq(v)
            yield f"x{idx} = {v}", lambda s, v=v: s.vars[idx].eq(v)
        for v in vs[1:]:
            yield f"x{idx} >= {v}", lambda s, v=v: s.vars[idx].adjmin(v)
        for v in vs[:-1]:
            yield f"x{idx} <= {v}", lambda s, v=v: s.vars[idx].adjmax(v)
    elif not x.is_assigned():
        yield f"x{idx} = 0", lambda s: s.vars[idx].zero()
        yield f"x{idx} = 1", lambda s: s.vars[idx].one()


def _post(lb: Lab, d: D.Dom) -> tuple[Space, list]:
    sp = Space()
    xs = D.build_vars(sp, lb.kinds, d)
    it_x = iter(xs)
    lb.entry.post(sp, [s.apply(None) if s.is_constant else s.apply(next(it_x)) for s in lb.specs])
    return sp, xs


def _missed(c: Space) -> int | None:
    """A propagator that would still change the stable space ``c``, if any."""
    before = c.domains()
    for pid in list(c.props):
        c2 = c.copy()
        c2.run_once(c2.props[pid])
        if c2.failed or c2.domains() != before:
            return pid
    return None


def _sample(doms: list, limit: int | None) -> list:
    if limit is None or len(doms) <= limit:
        return doms
    step = len(doms) / limit
    return [doms[int(i * step)] for i in range(limit)]


def missed_wakeups(
    entry: CatalogEntry | str,
    variant: Variant | str = "core",
    drop: int | None = None,
    max_domains: int | None = None,
    stop_at_first: bool = False,
) -> EventReport:
    """Search for missed wakeups of one derived propagator.

    ``drop`` removes the propagator's subscription with that index (in
    declaration order) before each mutation.  ``max_domains`` samples the
    enumerated domains evenly.
    """
    lb = lab(entry, variant)
    rep = EventReport(lb.entry.name, lb.variant.name)
    for d in _sample(lb.domains(), max_domains):
        sp, xs = _post(lb, d)
        if sp.fixpoint() is SpaceStatus.FAILED:
            continue
        rep.domains += 1
        for x in xs:
            for label, mutate in mutations(sp, x.idx):
                c = sp.copy()
                if drop is not None:
                    if not c.props:
                        continue
                    p = next(iter(c.props.values()))
                    if drop >= len(p.subscriptions):
                        continue
                    view, kinds = p.subscriptions[drop]
                    c.unsubscribe(p, view, kinds)
                mutate(c)
                rep.mutations += 1
                if c.fixpoint() is SpaceStatus.FAILED:
                    continue
                pid = _missed(c)
                if pid is not None:
                    rep.misses.append(f"{lb.fmt(d)} then {label}: {c.props[pid]!r} can still prune")
                    if stop_at_first:
                        return rep
    return rep


def declared_subscriptions(entry: CatalogEntry | str, variant: Variant | str = "core") -> list[tuple[object, Ev]]:
    """Subscriptions of the derived propagator as posted on the widest domain."""
    lb = lab(entry, variant)
    d = tuple(D.var_domains(k, u)[-1] if k != D.SET else _widest_set(u) for k, u in zip(lb.kinds, lb.universes))
    sp, _ = _post(lb, d)
    return list(next(iter(sp.props.values())).subscriptions)


def _widest_set(u) -> frozenset:
    return D.interval(frozenset(), frozenset(u))


# -- view-level event translation ------------------------------------------------


class _Recorder(Space):
    def __init__(self):
        super().__init__()
        self.events = Ev.NONE

    def notify(self, idx: int, kinds: Ev) -> None:
        self.events |= kinds
        super().notify(idx, kinds)


def _apparent(view, kind: str):
    if kind == D.SET:
        return frozenset(_values(view.getglb())), frozenset(_values(view.getlub()))
    if kind == D.BOOL:
        return frozenset(v for v in (0, 1) if view.can(v))
    return frozenset(_values(view.getdom()))


def _view_events(kind: str, old, new) -> Ev:
    """Event kinds that the change old -> new of an apparent domain fires."""
    if old == new:
        return Ev.NONE
    if kind == D.SET:
        ev = Ev.DMC
        if old[0] != new[0]:
            ev |= Ev.GLB
        if old[1] != new[1]:
            ev |= Ev.LUB
        return ev
    ev = Ev.DMC
    if min(old) != min(new):
        ev |= Ev.LBC
    if max(old) != max(new):
        ev |= Ev.UBC
    if len(new) == 1:
        ev |= Ev.VAL
    return ev


def view_event_misses(spec: ViewSpec, base_kind: str, universe) -> list[str]:
    """Mutations of the base variable whose view-level events are not covered.

    For every base domain over ``universe`` and every single mutation that
    leaves it non-empty, each event kind k fired on the view must be
    delivered on the base for a subscription to transform_events(k).
    """
    out_kind = spec.out_kind(base_kind)
    out = []
    for d in D.var_domains(base_kind, universe):
        probe = _Recorder()
        (x,) = D.build_vars(probe, [base_kind], (d,))
        for label, mutate in list(mutations(probe, x.idx)):
            sp = _Recorder()
            (y,) = D.build_vars(sp, [base_kind], (d,))
            view = spec.apply(y)
            old = _apparent(view, out_kind)
            mutate(sp)
            if sp.failed:
                continue
            new = _apparent(view, out_kind)
            for k in (Ev.LBC, Ev.UBC, Ev.DMC, Ev.VAL, Ev.GLB, Ev.LUB):
                if _view_events(out_kind, old, new) & k and not (spec.transform_events(k) & sp.events):
                    out.append(f"{spec!r} on {D.fmt_domain([base_kind], (d,))}, {label}: view fires {k.name} but base delivers {sp.events!r}")
    return out


# -- dropping subscriptions ----------------------------------------------------------

DETECTED, INERT, NEVER_WOKEN, UNDETECTED = "detected", "inert", "never woken", "undetected"


def _survives(lb: Lab) -> bool:
    """Whether the propagator stays posted after the first fixpoint on some domain."""
    for d in lb.domains():
        sp, _ = _post(lb, d)
        if sp.fixpoint() is SpaceStatus.STABLE and sp.props:
            return True
    return False


def drop_report(entry: CatalogEntry | str, variant: Variant | str = "core") -> list[tuple[int, str, str]]:
    """Classify every declared subscription by what dropping it does.

    ``inert``: the subscription maps to no event on any base variable
    (constant views).  ``never woken``: the propagator is failed or
    subsumed by its first run on every domain, so no later event exists.
    Otherwise dropping it must produce a detected miss.
    """
    lb = lab(entry, variant)
    survives = _survives(lb)
    out = []
    for k, (view, kinds) in enumerate(declared_subscriptions(entry, variant)):
        label = f"{view!r} {kinds!r}"
        if not list(view.base_subscriptions(kinds)):
            out.append((k, label, INERT))
        elif not survives:
            out.append((k, label, NEVER_WOKEN))
        else:
            rep = missed_wakeups(entry, variant, drop=k, stop_at_first=True)
            out.append((k, label, DETECTED if rep.misses else UNDETECTED))
    return out
