"""Decomposing views into auxiliary variables and channelling propagators.

Instead of running a core propagator on views, a decomposition introduces one
auxiliary variable per transformed argument, links it to the original
variable with a domain-complete channelling propagator for  x' = phi(x),
and posts the core on the auxiliaries.  The result is semantically the same
as the derived propagator but costs extra variables and propagations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .. import iterators as it
from .. import views as V
from ..engine import Fail, PropStatus, Propagator, Space
from ..kernel import Range, RangeSeq
from ..propagators.sets import SetEq
from ..variables import Ev
from ..views import ViewSpec

_INT_STEPS = ("offset", "minus", "scale", "bool_neg", "int_of_bool")


def _int_values(x) -> list[int]:
    if hasattr(x, "getdom"):
        return [v for lo, hi in x.getdom() for v in range(lo, hi + 1)]
    return [v for v in (0, 1) if x.can(v)]


def _restrict(x, keep: set[int]) -> None:
    if hasattr(x, "getdom"):
        Propagator.check(x.adjdom(RangeSeq.from_values(keep)))
        return
    if not keep:
        raise Fail
    if keep == {0}:
        Propagator.check(x.zero())
    elif keep == {1}:
        Propagator.check(x.one())


def _assigned(x) -> bool:
    return x.assigned() if hasattr(x, "assigned") else x.is_assigned()


class IntChannel(Propagator):
    """y = phi(x) for an integer/Boolean value map, domain-complete."""

    view_fields = ("x", "y")

    def __init__(self, space, x, y, spec: ViewSpec):
        self.x, self.y, self.spec = x, y, spec
        super().__init__(space)
        self.subscribe(x, Ev.DMC)
        self.subscribe(y, Ev.DMC)

    def propagate(self) -> PropStatus:
        phi = self.spec.phi
        ys = set(_int_values(self.y))
        pairs = [(v, phi(v)) for v in _int_values(self.x)]
        keep = [(v, w) for v, w in pairs if w in ys]
        _restrict(self.y, {w for _, w in keep})
        _restrict(self.x, {v for v, _ in keep})
        return PropStatus.SUBSUMED if _assigned(self.x) else PropStatus.AT_FIXPOINT


def _elems(r) -> set[int]:
    return {v for lo, hi in r for v in range(lo, hi + 1)}


class ComplementChannel(Propagator):
    """y = universe - x on set intervals, element by element."""

    view_fields = ("x", "y")

    def __init__(self, space, x, y, universe: Range):
        self.x, self.y, self.u = x, y, universe
        super().__init__(space)
        self.subscribe(x, Ev.GLB | Ev.LUB)
        self.subscribe(y, Ev.GLB | Ev.LUB)

    def propagate(self) -> PropStatus:
        x, y, u = self.x, self.y, self.u
        whole = set(range(u.lo, u.hi + 1))
        chk = self.check
        chk(x.adjlub(RangeSeq.from_values(whole)))
        chk(y.adjlub(RangeSeq.from_values(whole)))
        # e in x <=> e not in y
        chk(y.adjlub(RangeSeq.from_values(whole - _elems(x.getglb()))))
        chk(x.adjlub(RangeSeq.from_values(whole - _elems(y.getglb()))))
        chk(y.adjglb(RangeSeq.from_values(whole - _elems(x.getlub()))))
        chk(x.adjglb(RangeSeq.from_values(whole - _elems(y.getlub()))))
        return PropStatus.SUBSUMED if x.assigned() else PropStatus.AT_FIXPOINT


class SingletonChannel(Propagator):
    """s = {x} for an integer x and a set interval s."""

    view_fields = ("x", "s")

    def __init__(self, space, x, s):
        self.x, self.s = x, s
        super().__init__(space)
        self.subscribe(x, Ev.DMC)
        self.subscribe(s, Ev.GLB | Ev.LUB)

    def propagate(self) -> PropStatus:
        x, s = self.x, self.s
        glb = it.to_seq(s.getglb())
        if glb and glb.min != glb.max:
            raise Fail
        if glb:
            self.check(x.eq(glb.min))
        self.check(x.adjdom(s.getlub()))
        self.check(s.adjlub(x.getdom()))
        if x.assigned():
            self.check(s.adjglb(it.singleton(x.val())))
            return PropStatus.SUBSUMED
        return PropStatus.AT_FIXPOINT


def _split(spec: ViewSpec) -> tuple[ViewSpec, list]:
    """Split into the inner integer/Boolean chain and the outer set steps."""
    steps = list(spec.steps)
    i = len(steps)
    while i > 0 and steps[i - 1][0] in _INT_STEPS:
        i -= 1
    return ViewSpec(tuple(steps[i:])), steps[:i]


@dataclass
class Decomposition:
    """Bookkeeping for the constraints a decomposing poster created."""

    aux: list = field(default_factory=list)
    channels: list = field(default_factory=list)
    # scope per constraint: ("channel"|"core", frozenset of variable indices)
    scopes: list = field(default_factory=list)

    def berge_acyclic(self) -> bool:
        """Whether the variable/constraint incidence graph is a forest."""
        parent: dict = {}

        def find(a):
            while parent.setdefault(a, a) != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, (_, scope) in enumerate(self.scopes):
            for v in scope:
                a, b = find(("c", i)), find(("v", v))
                if a == b:
                    return False
                parent[a] = b
        return True


class DecomposingPoster:
    """Posts derived propagators as aux variables + channels + core."""

    mode = "decomposed"

    def __init__(self, space: Space, include_identity: bool = False):
        self.space = space
        self.include_identity = include_identity
        self.record = Decomposition()

    def _channel(self, p, scope):
        self.record.channels.append(p)
        self.record.scopes.append(("channel", frozenset(scope)))

    def _aux_int(self, x, spec: ViewSpec):
        sp = self.space
        is_bool = not hasattr(x, "getdom")
        if spec.out_kind(V.BOOL if is_bool else V.INT) == V.BOOL:
            y = sp.bool_var()
        else:
            y = sp.int_var(RangeSeq.from_values({spec.phi(v) for v in _int_values(x)}))
        self.record.aux.append(y)
        self._channel(IntChannel(sp, x, y, spec), (x.idx, y.idx))
        return y

    def _lift(self, x, spec: ViewSpec):
        sp = self.space
        if spec.is_identity:
            if not self.include_identity:
                return x
            return self._aux_int(x, spec) if not hasattr(x, "getglb") else self._set_copy(x)
        if spec.is_constant:
            kind, k = spec.steps[-1]
            base = sp.int_var(k, k) if kind == "constant" else sp.set_var(k, k)
            self.record.aux.append(base)
            return self._lift(base, ViewSpec(spec.steps[:-1]))
        inner, outer = _split(spec)
        y = self._aux_int(x, inner) if inner.steps else x
        for kind, p in reversed(outer):
            if kind == "singleton_set":
                s = sp.set_var((), RangeSeq.from_values(_int_values(y)))
                self._channel(SingletonChannel(sp, y, s), (y.idx, s.idx))
            else:
                u = set(range(p.lo, p.hi + 1))
                s = sp.set_var(
                    RangeSeq.from_values(u - _elems(y.getlub())),
                    RangeSeq.from_values(u - _elems(y.getglb())),
                )
                self._channel(ComplementChannel(sp, y, s, p), (y.idx, s.idx))
            self.record.aux.append(s)
            y = s
        return y

    def _set_copy(self, x):
        sp = self.space
        y = sp.set_var(it.to_seq(x.getglb()), it.to_seq(x.getlub()))
        self.record.aux.append(y)
        self._channel(SetEq(sp, x, y), (x.idx, y.idx))
        return y

    def post(self, factory, args: Sequence[tuple[object, ViewSpec]]):
        xs = [self._lift(x, spec) for x, spec in args]
        p = factory(self.space, xs)
        self.record.scopes.append(("core", frozenset(x.idx for x in xs)))
        return p


def build_decomposition(post, specs: Sequence[ViewSpec], space: Space, xs: Sequence,
                        include_identity: bool = False) -> Decomposition:
    """Decompose ``post`` applied through ``specs`` over base variables ``xs``.

    Constant specs take no base variable.  Returns the bookkeeping record;
    the propagators live in ``space``.
    """
    poster = DecomposingPoster(space, include_identity)
    it_x = iter(xs)
    args = [(None if s.is_constant else next(it_x), s) for s in specs]
    poster.post(post, args)
    return poster.record


def differential_run(model: str, size: int, **kw) -> dict:
    """Run a model in both modes with identical search; return both stats."""
    from ..models import run_model

    out = {}
    for mode in ("views", "decomposed"):
        sols, stats = run_model(model, size, mode, **kw)
        out[mode] = (sols, stats)
    return out
