"""Views: injective value transformations wrapped around variables.

A view has exactly the interface of the variable type it presents.  Reads
transform values forward, writes transform them back, and subscriptions are
translated into event sets on the underlying variable.  Any propagator that
accepts a variable accepts a view of the same type in its place, which is
how propagator variants are derived without new propagation code.

:class:`ViewSpec` is the pure description of a (possibly composed) view: its
value map, inverse, event translation and typing.  ``spec.apply(var)``
builds the view object; every view object reports its ``spec`` back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import iterators as it
from .kernel import Range, RangeSeq, add, mul, neg, sub
from .variables import Ev, ModEvent

INT, BOOL, SET = "int", "bool", "set"

# kind -> (input type, output type); None input means no base variable
_STEP_TYPES = {
    "offset": (INT, INT),
    "minus": (INT, INT),
    "scale": (INT, INT),
    "constant": (None, INT),
    "bool_neg": (BOOL, BOOL),
    "int_of_bool": (BOOL, INT),
    "singleton_set": (INT, SET),
    "set_complement": (SET, SET),
    "const_set": (None, SET),
}


def _swap(kinds: Ev, a: Ev, b: Ev) -> Ev:
    out = kinds & ~(a | b)
    if kinds & a:
        out |= b
    if kinds & b:
        out |= a
    return out


@dataclass(frozen=True)
class ViewSpec:
    """A chain of view steps, outermost first.  The empty chain is identity."""

    steps: tuple[tuple[str, object], ...] = ()

    def __post_init__(self):
        for i, (kind, param) in enumerate(self.steps):
            if kind not in _STEP_TYPES:
                raise ValueError(f"unknown view kind {kind!r}")
            if kind == "scale" and (not isinstance(param, int) or param < 1):
                raise ValueError("scale views need a coefficient >= 1")
            inner_t = _STEP_TYPES[self.steps[i + 1][0]][1] if i + 1 < len(self.steps) else None
            want = _STEP_TYPES[kind][0]
            if want is None and i + 1 < len(self.steps):
                raise ValueError(f"{kind} view cannot wrap another view")
            if inner_t is not None and want != inner_t:
                raise ValueError(f"{kind} view expects {want} input, got {inner_t}")

    def __repr__(self) -> str:
        if not self.steps:
            return "identity"
        parts = []
        for kind, p in self.steps:
            if p is None:
                parts.append(kind)
            elif isinstance(p, RangeSeq):
                parts.append(f"{kind}{p!r}")
            else:
                parts.append(f"{kind}({p})")
        return "∘".join(parts)

    # -- typing
    @property
    def is_identity(self) -> bool:
        return not self.steps

    @property
    def is_constant(self) -> bool:
        return bool(self.steps) and _STEP_TYPES[self.steps[-1][0]][0] is None

    def in_kind(self, default: str | None = None) -> str | None:
        if not self.steps:
            return default
        return _STEP_TYPES[self.steps[-1][0]][0]

    def out_kind(self, default: str | None = None) -> str | None:
        if not self.steps:
            return default
        return _STEP_TYPES[self.steps[0][0]][1]

    # -- value maps
    def phi(self, v=None):
        """Forward value map.  Constant specs ignore ``v``."""
        for kind, p in reversed(self.steps):
            v = _STEP_PHI[kind](v, p)
        return v

    def phi_inv(self, w):
        """Inverse value map; ``None`` when ``w`` is not in the image.

        For constant specs the result is ``True`` when ``w`` is the constant.
        """
        for kind, p in self.steps:
            w = _STEP_INV[kind](w, p)
            if w is None:
                return None
        return w

    def transform_events(self, kinds: Ev) -> Ev:
        """Event set on the base variable that covers ``kinds`` on the view."""
        for kind, _ in self.steps:
            if kind in ("constant", "const_set"):
                return Ev.NONE
            if kind in ("minus", "bool_neg"):
                kinds = _swap(kinds, Ev.LBC, Ev.UBC)
            elif kind == "set_complement":
                kinds = _swap(kinds, Ev.GLB, Ev.LUB)
            elif kind == "singleton_set":
                out = kinds & (Ev.DMC | Ev.VAL)
                if kinds & Ev.GLB:
                    out |= Ev.VAL
                if kinds & Ev.LUB:
                    out |= Ev.DMC
                kinds = out
        return kinds

    def apply(self, var=None):
        """Build the view object for this spec over ``var``."""
        v = var
        for kind, p in reversed(self.steps):
            v = _VIEW_CLASS[kind].make(v, p)
        return v


IDENTITY = ViewSpec()


def offset(o: int) -> ViewSpec:
    return ViewSpec((("offset", o),))


def minus() -> ViewSpec:
    return ViewSpec((("minus", None),))


def scale(a: int) -> ViewSpec:
    return ViewSpec((("scale", a),))


def constant(k: int) -> ViewSpec:
    return ViewSpec((("constant", k),))


def bool_neg() -> ViewSpec:
    return ViewSpec((("bool_neg", None),))


def int_of_bool() -> ViewSpec:
    return ViewSpec((("int_of_bool", None),))


def singleton_set() -> ViewSpec:
    return ViewSpec((("singleton_set", None),))


def set_complement(lo: int, hi: int) -> ViewSpec:
    return ViewSpec((("set_complement", Range(lo, hi)),))


def const_set(values: Iterable[int] | RangeSeq) -> ViewSpec:
    s = values if isinstance(values, RangeSeq) else RangeSeq.from_values(values)
    return ViewSpec((("const_set", s),))


def compose(outer: ViewSpec, inner: ViewSpec) -> ViewSpec:
    """The view whose value map is ``outer ∘ inner``."""
    return ViewSpec(outer.steps + inner.steps)


def _set_compl(s: frozenset, universe: Range) -> frozenset:
    return frozenset(range(universe.lo, universe.hi + 1)) - s


_STEP_PHI = {
    "offset": lambda v, o: add(v, o),
    "minus": lambda v, _: neg(v),
    "scale": lambda v, a: mul(v, a),
    "constant": lambda _v, k: k,
    "bool_neg": lambda v, _: 1 - v,
    "int_of_bool": lambda v, _: v,
    "singleton_set": lambda v, _: frozenset((v,)),
    "set_complement": _set_compl,
    "const_set": lambda _v, s: s.to_set(),
}


def _inv_scale(w, a):
    return w // a if w % a == 0 else None


def _inv_compl(w, u):
    if not w <= frozenset(range(u.lo, u.hi + 1)):
        return None
    return _set_compl(w, u)


_STEP_INV = {
    "offset": lambda w, o: sub(w, o),
    "minus": lambda w, _: neg(w),
    "scale": _inv_scale,
    "constant": lambda w, k: True if w == k else None,
    "bool_neg": lambda w, _: 1 - w if w in (0, 1) else None,
    "int_of_bool": lambda w, _: w if w in (0, 1) else None,
    "singleton_set": lambda w, _: next(iter(w)) if len(w) == 1 else None,
    "set_complement": _inv_compl,
    "const_set": lambda w, s: True if w == s.to_set() else None,
}


# -- view objects -----------------------------------------------------------


class _View:
    """Shared plumbing: base variable access, spec, subscription, copying."""

    __slots__ = ("x",)
    kind = ""

    @classmethod
    def make(cls, x, param):
        return cls(x) if param is None else cls(x, param)

    @property
    def var(self):
        return self.x.var

    @property
    def param(self):
        return None

    @property
    def space(self):
        return self.x.space

    def attach(self, space) -> None:
        """Bind constant leaves (which have no variable) to ``space``."""
        if isinstance(self.x, _View):
            self.x.attach(space)

    @property
    def spec(self) -> ViewSpec:
        return compose(ViewSpec(((self.kind, self.param),)), self.x.spec)

    def base_subscriptions(self, kinds: Ev):
        return self.x.base_subscriptions(ViewSpec(((self.kind, self.param),)).transform_events(kinds))

    def rebind(self, space):
        clone = object.__new__(type(self))
        for slot in _all_slots(type(self)):
            setattr(clone, slot, getattr(self, slot))
        clone.x = self.x.rebind(space)
        return clone

    def __repr__(self) -> str:
        return f"{self.spec!r}({self.var!r})"


def _all_slots(cls):
    for c in cls.__mro__:
        yield from getattr(c, "__slots__", ())


class _IntView(_View):
    """Integer-view defaults derived from getdom/setdom/adjmin/adjmax."""

    __slots__ = ()

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.getdom())

    def assigned(self) -> bool:
        return self.x.assigned()

    def val(self) -> int:
        return self.min()

    def eq(self, n: int) -> ModEvent:
        return self.adjdom(it.singleton(n))

    def nq(self, n: int) -> ModEvent:
        return self.excdom(it.singleton(n))

    def __contains__(self, v: int) -> bool:
        return any(lo <= v <= hi for lo, hi in self.getdom())


class OffsetView(_IntView):
    """Presents x + o."""

    __slots__ = ("o",)
    kind = "offset"

    def __init__(self, x, o: int):
        self.x, self.o = x, o

    @property
    def param(self):
        return self.o

    def min(self) -> int:
        return add(self.x.min(), self.o)

    def max(self) -> int:
        return add(self.x.max(), self.o)

    def size(self) -> int:
        return self.x.size()

    def __contains__(self, v: int) -> bool:
        return sub(v, self.o) in self.x

    def adjmin(self, n: int) -> ModEvent:
        return self.x.adjmin(sub(n, self.o))

    def adjmax(self, n: int) -> ModEvent:
        return self.x.adjmax(sub(n, self.o))

    def getdom(self):
        return it.Offset(self.x.getdom(), self.o)

    def setdom(self, r) -> ModEvent:
        return self.x.setdom(it.Offset(_iter(r), -self.o))

    def adjdom(self, r) -> ModEvent:
        return self.x.adjdom(it.Offset(_iter(r), -self.o))

    def excdom(self, r) -> ModEvent:
        return self.x.excdom(it.Offset(_iter(r), -self.o))


class MinusView(_IntView):
    """Presents -x."""

    __slots__ = ()
    kind = "minus"

    def __init__(self, x):
        self.x = x

    def min(self) -> int:
        return neg(self.x.max())

    def max(self) -> int:
        return neg(self.x.min())

    def size(self) -> int:
        return self.x.size()

    def __contains__(self, v: int) -> bool:
        return neg(v) in self.x

    def adjmin(self, n: int) -> ModEvent:
        return self.x.adjmax(neg(n))

    def adjmax(self, n: int) -> ModEvent:
        return self.x.adjmin(neg(n))

    def getdom(self):
        return it.Minus(self.x.getdom())

    def setdom(self, r) -> ModEvent:
        return self.x.setdom(it.Minus(_iter(r)))

    def adjdom(self, r) -> ModEvent:
        return self.x.adjdom(it.Minus(_iter(r)))

    def excdom(self, r) -> ModEvent:
        return self.x.excdom(it.Minus(_iter(r)))


class ScaleView(_IntView):
    """Presents a * x for a >= 1."""

    __slots__ = ("a",)
    kind = "scale"

    def __init__(self, x, a: int):
        if a < 1:
            raise ValueError("scale views need a coefficient >= 1")
        self.x, self.a = x, a

    @property
    def param(self):
        return self.a

    def min(self) -> int:
        return mul(self.x.min(), self.a)

    def max(self) -> int:
        return mul(self.x.max(), self.a)

    def size(self) -> int:
        return self.x.size()

    def __contains__(self, v: int) -> bool:
        return v % self.a == 0 and v // self.a in self.x

    def adjmin(self, n: int) -> ModEvent:
        return self.x.adjmin(-((-n) // self.a))

    def adjmax(self, n: int) -> ModEvent:
        return self.x.adjmax(n // self.a)

    def getdom(self):
        return it.ScaleUp(self.x.getdom(), self.a)

    def setdom(self, r) -> ModEvent:
        return self.x.setdom(it.ScaleDown(_iter(r), self.a))

    def adjdom(self, r) -> ModEvent:
        return self.x.adjdom(it.ScaleDown(_iter(r), self.a))

    def excdom(self, r) -> ModEvent:
        return self.x.excdom(it.ScaleDown(_iter(r), self.a))


class ConstIntView(_IntView):
    """Behaves like an integer variable assigned to k; writes only detect failure."""

    __slots__ = ("k", "_space")
    kind = "constant"

    def __init__(self, x, k: int):
        if x is not None:
            raise ValueError("constant views have no base variable")
        self.x, self.k, self._space = None, k, None

    @property
    def param(self):
        return self.k

    @property
    def var(self):
        return None

    @property
    def spec(self) -> ViewSpec:
        return constant(self.k)

    def base_subscriptions(self, kinds: Ev):
        return []

    @property
    def space(self):
        return self._space

    def attach(self, space) -> None:
        self._space = space

    def rebind(self, space):
        clone = type(self)(None, self.param)
        clone._space = space
        return clone

    def _failed(self) -> ModEvent:
        if self._space is not None:
            self._space.fail()
        return ModEvent.FAILED

    def min(self) -> int:
        return self.k

    max = min

    def size(self) -> int:
        return 1

    def assigned(self) -> bool:
        return True

    def __contains__(self, v: int) -> bool:
        return v == self.k

    def adjmin(self, n: int) -> ModEvent:
        return ModEvent.NONE if n <= self.k else self._failed()

    def adjmax(self, n: int) -> ModEvent:
        return ModEvent.NONE if n >= self.k else self._failed()

    def getdom(self):
        return it.singleton(self.k)

    def setdom(self, r) -> ModEvent:
        r = _iter(r)
        return self._failed() if r.done() else ModEvent.NONE

    def adjdom(self, r) -> ModEvent:
        return self.setdom(it.Inter(self.getdom(), _iter(r)))

    def excdom(self, r) -> ModEvent:
        return self.setdom(it.Diff(self.getdom(), _iter(r)))


class IntOfBoolView(_IntView):
    """Presents a Boolean variable (or Boolean view) as an integer in {0, 1}."""

    __slots__ = ()
    kind = "int_of_bool"

    def __init__(self, x):
        self.x = x

    def min(self) -> int:
        return 0 if self.x.can(0) else 1

    def max(self) -> int:
        return 1 if self.x.can(1) else 0

    def size(self) -> int:
        return 1 if self.x.is_assigned() else 2

    def assigned(self) -> bool:
        return self.x.is_assigned()

    def __contains__(self, v: int) -> bool:
        return v in (0, 1) and self.x.can(v)

    def adjmin(self, n: int) -> ModEvent:
        if n <= 0:
            return ModEvent.NONE
        if n == 1:
            return self.x.one()
        return _fail(self.x)

    def adjmax(self, n: int) -> ModEvent:
        if n >= 1:
            return ModEvent.NONE
        if n == 0:
            return self.x.zero()
        return _fail(self.x)

    def getdom(self):
        return it.singleton(self.min(), self.max())

    def setdom(self, r) -> ModEvent:
        keep = it.to_seq(it.Inter(_iter(r), it.singleton(0, 1)))
        if not keep:
            return _fail(self.x)
        if keep.min == keep.max:
            return self.x.one() if keep.min == 1 else self.x.zero()
        return ModEvent.NONE

    def adjdom(self, r) -> ModEvent:
        return self.setdom(it.Inter(self.getdom(), _iter(r)))

    def excdom(self, r) -> ModEvent:
        return self.setdom(it.Diff(self.getdom(), _iter(r)))


def _fail(x) -> ModEvent:
    """Fail the space owning ``x`` (a variable or view)."""
    x.space.fail()
    return ModEvent.FAILED


class NegBoolView(_View):
    """Presents the negation 1 - b of a Boolean."""

    __slots__ = ()
    kind = "bool_neg"

    def __init__(self, x):
        self.x = x

    def is_assigned(self) -> bool:
        return self.x.is_assigned()

    assigned = is_assigned

    def value(self) -> int:
        return 1 - self.x.value()

    def can(self, v: int) -> bool:
        return self.x.can(1 - v)

    def zero(self) -> ModEvent:
        return self.x.one()

    def one(self) -> ModEvent:
        return self.x.zero()


class ComplementView(_View):
    """Presents universe - s for a set variable s with lub within the universe."""

    __slots__ = ("u",)
    kind = "set_complement"

    def __init__(self, x, universe):
        self.x, self.u = x, Range(*universe)

    @property
    def param(self):
        return self.u

    def assigned(self) -> bool:
        return self.x.assigned()

    def getglb(self):
        return it.Compl(self.x.getlub(), self.u)

    def getlub(self):
        return it.Compl(self.x.getglb(), self.u)

    def adjglb(self, r) -> ModEvent:
        # adding r to the complement's glb removes it from the base lub
        s = it.to_seq(r)
        if s and (s.min < self.u.lo or s.max > self.u.hi):
            return _fail(self.x)
        return _swap_me(self.x.adjlub(it.Compl(it.SeqIter(s), self.u)))

    def adjlub(self, r) -> ModEvent:
        return _swap_me(self.x.adjglb(it.Compl(_clip(r, self.u), self.u)))


def _clip(r, u: Range):
    return it.Inter(_iter(r), it.singleton(u.lo, u.hi))


def _swap_me(me: ModEvent) -> ModEvent:
    if me is ModEvent.GLB:
        return ModEvent.LUB
    if me is ModEvent.LUB:
        return ModEvent.GLB
    return me


class SingletonSetView(_View):
    """Presents an integer x as the set {x}."""

    __slots__ = ()
    kind = "singleton_set"

    def __init__(self, x):
        self.x = x

    def assigned(self) -> bool:
        return self.x.assigned()

    def getglb(self):
        if self.x.assigned():
            v = self.x.min()
            return it.singleton(v)
        return it.empty()

    def getlub(self):
        return self.x.getdom()

    def adjglb(self, r) -> ModEvent:
        s = it.to_seq(r)
        if not s:
            return ModEvent.NONE
        if s.min != s.max:
            return _fail(self.x)
        me = self.x.eq(s.min)
        return _set_me(me, glb=True)

    def adjlub(self, r) -> ModEvent:
        return _set_me(self.x.adjdom(_iter(r)), glb=False)


def _set_me(me: ModEvent, glb: bool) -> ModEvent:
    if me in (ModEvent.BOUNDS, ModEvent.DOMAIN):
        return ModEvent.GLB if glb else ModEvent.LUB
    return me


class ConstSetView(_View):
    """Behaves like a set variable assigned to S; writes only check consistency."""

    __slots__ = ("s", "_space")
    kind = "const_set"

    def __init__(self, x, s: RangeSeq):
        if x is not None:
            raise ValueError("constant views have no base variable")
        self.x, self.s, self._space = None, s, None

    @property
    def param(self):
        return self.s

    @property
    def var(self):
        return None

    @property
    def spec(self) -> ViewSpec:
        return const_set(self.s)

    def base_subscriptions(self, kinds: Ev):
        return []

    @property
    def space(self):
        return self._space

    def attach(self, space) -> None:
        self._space = space

    def rebind(self, space):
        clone = type(self)(None, self.param)
        clone._space = space
        return clone

    def _failed(self) -> ModEvent:
        if self._space is not None:
            self._space.fail()
        return ModEvent.FAILED

    def assigned(self) -> bool:
        return True

    def getglb(self):
        return it.SeqIter(self.s)

    getlub = getglb

    def adjglb(self, r) -> ModEvent:
        return ModEvent.NONE if it.to_seq(r).issubset(self.s) else self._failed()

    def adjlub(self, r) -> ModEvent:
        return ModEvent.NONE if self.s.issubset(it.to_seq(r)) else self._failed()


_VIEW_CLASS = {
    "offset": OffsetView,
    "minus": MinusView,
    "scale": ScaleView,
    "constant": ConstIntView,
    "bool_neg": NegBoolView,
    "int_of_bool": IntOfBoolView,
    "singleton_set": SingletonSetView,
    "set_complement": ComplementView,
    "const_set": ConstSetView,
}


def _iter(r):
    if isinstance(r, RangeSeq):
        return it.SeqIter(r)
    return r


__all__ = [
    "ComplementView",
    "ConstIntView",
    "ConstSetView",
    "IDENTITY",
    "IntOfBoolView",
    "MinusView",
    "NegBoolView",
    "OffsetView",
    "ScaleView",
    "SingletonSetView",
    "ViewSpec",
    "bool_neg",
    "compose",
    "const_set",
    "constant",
    "int_of_bool",
    "minus",
    "offset",
    "scale",
    "set_complement",
    "singleton_set",
]
