"""Explicit domains for brute-force reasoning.

A domain here is a tuple with one frozenset per variable.  Integer and
Boolean variables hold ints; set variables hold frozensets of ints.  Set
variable domains in the engine are intervals [glb, lub], so the set lattice
enumerated here is the lattice of intervals.  ``None`` stands for the failed
domain.

Value maps for view specs are re-implemented here from their definitions,
independently of the view objects, so that the oracle can check them.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

from ..views import ViewSpec

INT, BOOL, SET = "int", "bool", "set"

Dom = tuple  # tuple[frozenset, ...]


# -- per-kind lattices --------------------------------------------------------


def subsets(values: Iterable) -> Iterator[frozenset]:
    vs = sorted(values)
    for r in range(len(vs) + 1):
        for combo in itertools.combinations(vs, r):
            yield frozenset(combo)


def interval(glb: frozenset, lub: frozenset) -> frozenset:
    """All sets s with glb <= s <= lub."""
    free = sorted(lub - glb)
    return frozenset(glb | extra for extra in subsets(free))


def var_domains(kind: str, universe: Sequence) -> list[frozenset]:
    """All non-empty domains of one variable over ``universe``."""
    if kind == SET:
        out = []
        for lub in subsets(universe):
            for glb in subsets(lub):
                out.append(interval(glb, lub))
        return out
    return [s for s in subsets(universe) if s]


def all_domains(kinds: Sequence[str], universes: Sequence[Sequence]) -> list[Dom]:
    return list(itertools.product(*(var_domains(k, u) for k, u in zip(kinds, universes))))


def var_hull(kind: str, values: frozenset) -> frozenset:
    if not values:
        return values
    if kind == SET:
        return interval(frozenset.intersection(*values), frozenset.union(*values))
    return frozenset(range(min(values), max(values) + 1))


def hull(kinds: Sequence[str], d: Dom | None) -> Dom | None:
    if d is None:
        return None
    return tuple(var_hull(k, s) for k, s in zip(kinds, d))


def var_predecessors(kind: str, values: frozenset) -> Iterator[frozenset]:
    """Immediate predecessors of a single-variable domain in its lattice."""
    if kind == SET:
        glb = frozenset.intersection(*values)
        lub = frozenset.union(*values)
        for e in sorted(lub - glb):
            yield interval(glb | {e}, lub)
            yield interval(glb, lub - {e})
        return
    if len(values) > 1:
        for v in sorted(values):
            yield values - {v}


def predecessors(kinds: Sequence[str], d: Dom) -> Iterator[Dom]:
    for i, (k, s) in enumerate(zip(kinds, d)):
        for p in var_predecessors(k, s):
            yield d[:i] + (p,) + d[i + 1:]


def is_subdomain(a: Dom | None, b: Dom | None) -> bool:
    if a is None:
        return True
    if b is None:
        return False
    return all(x <= y for x, y in zip(a, b))


def assignments(kinds: Sequence[str], universes: Sequence[Sequence]) -> Iterator[tuple]:
    pools = [list(subsets(u)) if k == SET else list(u) for k, u in zip(kinds, universes)]
    return itertools.product(*pools)


def singleton(a: tuple) -> Dom:
    return tuple(frozenset((v,)) for v in a)


def fmt_value(v) -> str:
    if isinstance(v, frozenset):
        return "{" + ",".join(map(str, sorted(v))) + "}"
    return str(v)


def fmt_domain(kinds: Sequence[str], d: Dom | None) -> str:
    """Human-readable listing: one ``xi in ...`` item per variable."""
    if d is None:
        return "failed"
    parts = []
    for i, (k, s) in enumerate(zip(kinds, d)):
        if k == SET and s:
            glb, lub = frozenset.intersection(*s), frozenset.union(*s)
            parts.append(f"x{i} in [{fmt_value(glb)}..{fmt_value(lub)}]")
        else:
            parts.append(f"x{i} in {{{','.join(fmt_value(v) for v in sorted(s, key=_key))}}}")
    return ", ".join(parts)


def _key(v):
    return (len(v), sorted(v)) if isinstance(v, frozenset) else v


# -- value maps -------------------------------------------------------------


def _seq_values(param) -> frozenset:
    return frozenset(v for lo, hi in param for v in range(lo, hi + 1))


def step_map(kind: str, param, v):
    if kind == "offset":
        return v + param
    if kind == "minus":
        return -v
    if kind == "scale":
        return param * v
    if kind == "constant":
        return param
    if kind == "bool_neg":
        return 1 - v
    if kind == "int_of_bool":
        return v
    if kind == "singleton_set":
        return frozenset((v,))
    if kind == "set_complement":
        lo, hi = param
        return frozenset(range(lo, hi + 1)) - v
    if kind == "const_set":
        return _seq_values(param)
    raise ValueError(kind)


def phi(spec: ViewSpec, v=None):
    for kind, param in reversed(spec.steps):
        v = step_map(kind, param, v)
    return v


def image(spec: ViewSpec, values: frozenset) -> frozenset:
    if spec.is_constant:
        return frozenset((phi(spec),))
    return frozenset(phi(spec, v) for v in values)


def preimage(spec: ViewSpec, values: frozenset, universe: frozenset) -> frozenset:
    return frozenset(v for v in universe if phi(spec, v) in values)


# -- bridge to the engine ----------------------------------------------------


def build_vars(space, kinds: Sequence[str], d: Dom) -> list:
    from ..kernel import RangeSeq

    out = []
    for k, s in zip(kinds, d):
        if k == INT:
            out.append(space.int_var(RangeSeq.from_values(s)))
        elif k == BOOL:
            out.append(space.bool_var(next(iter(s)) if len(s) == 1 else None))
        else:
            glb, lub = frozenset.intersection(*s), frozenset.union(*s)
            out.append(space.set_var(sorted(glb), sorted(lub)))
    return out


def read_vars(space, kinds: Sequence[str], xs: Sequence) -> Dom | None:
    if space.failed:
        return None
    out = []
    for k, x in zip(kinds, xs):
        snap = x.snapshot()
        if k == INT:
            out.append(frozenset(v for lo, hi in snap for v in range(lo, hi + 1)))
        elif k == BOOL:
            out.append(frozenset(v for v, ok in ((0, snap.can0), (1, snap.can1)) if ok))
        else:
            glb = frozenset(v for lo, hi in snap.glb for v in range(lo, hi + 1))
            lub = frozenset(v for lo, hi in snap.lub for v in range(lo, hi + 1))
            out.append(interval(glb, lub) if glb <= lub else frozenset())
    if any(not s for s in out):
        return None
    return tuple(out)
