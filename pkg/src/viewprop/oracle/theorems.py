"""Exhaustive checks of the properties of derived propagators.

For a catalog entry and one of its variants, a :class:`Lab` enumerates every
domain over the variant's base universes and evaluates

* the derived propagator as implemented (core propagator running on views,
  one ``propagate()`` call in a checked space), and
* the reference composition  phi^-1 . p . phi  computed on explicit value
  sets, where p is the core propagator running on plain variables.

Set arguments live in the interval lattice.  When the image of a domain under
a view is not an interval (a singleton-set view of an integer with several
values), the core is evaluated as the fixpoint of  E -> E & p(hull(E)),
which is what the core can observe through the view.

Each claim returns a :class:`TheoremResult` with the first counterexample
rendered as text.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

from ..engine import PropStatus, Space
from ..propagators import catalog as cat
from ..propagators.catalog import CatalogEntry, Variant
from ..variables import ContractViolation
from ..views import ViewSpec
from . import domains as D
from .extensional import (
    BOUNDS_D,
    BOUNDS_Z,
    DOMAIN,
    RANGE,
    Extensional,
    bounds_r_contains,
    complete_propagator,
)

BOUNDS_R, VALUE = cat.BOUNDS_R, cat.VALUE

CLAIMS = ("correctness", "induced", "contraction", "fixpoint", "subsumption", "derivation")


@dataclass
class TheoremResult:
    claim: str
    entry: str
    variant: str
    passed: bool
    checked: int
    counterexample: str | None = None
    note: str = ""

    def __str__(self) -> str:
        head = f"{self.entry}/{self.variant} {self.claim}"
        if self.passed:
            return f"{head}: pass ({self.checked} cases){' ' + self.note if self.note else ''}"
        return f"{head}: counterexample {self.counterexample}"


class Lab:
    """Memoized evaluation of one derived propagator over all small domains."""

    def __init__(self, entry: CatalogEntry, variant: Variant):
        self.entry, self.variant = entry, variant
        self.specs: tuple[ViewSpec, ...] = variant.specs
        self.kinds = entry.base_kinds(variant)
        self.universes = entry.base_universes(variant)
        self.core_kinds = tuple(s.out_kind(k) for s, k in zip(self.specs, entry.kinds))
        self._derived: dict = {}
        self._core: dict = {}
        self._domains = None
        self._dsub: dict = {}
        self._csub: dict = {}

    @property
    def name(self) -> str:
        return f"{self.entry.name}/{self.variant.name}"

    def domains(self) -> list[D.Dom]:
        if self._domains is None:
            self._domains = D.all_domains(self.kinds, self.universes)
        return self._domains

    def fmt(self, d) -> str:
        return D.fmt_domain(self.kinds, d)

    # -- the implementation
    def derived(self, d: D.Dom | None) -> tuple[D.Dom | None, PropStatus]:
        if d is None:
            return None, PropStatus.FAILED
        hit = self._derived.get(d)
        if hit is None:
            sp = Space(checked=True)
            xs = D.build_vars(sp, self.kinds, d)
            it_x = iter(xs)
            views = [s.apply(None) if s.is_constant else s.apply(next(it_x)) for s in self.specs]
            p = self.entry.post(sp, views)
            st = sp.run_once(p)
            hit = (D.read_vars(sp, self.kinds, xs), st)
            self._derived[d] = hit
        return hit

    # -- the reference composition
    def image(self, d: D.Dom) -> tuple:
        it_d = iter(d)
        return tuple(
            D.image(s, frozenset()) if s.is_constant else D.image(s, next(it_d)) for s in self.specs
        )

    def _core_once(self, e: tuple) -> tuple | None:
        sp = Space(checked=True)
        xs = D.build_vars(sp, self.core_kinds, e)
        p = self.entry.post(sp, xs)
        sp.run_once(p)
        return D.read_vars(sp, self.core_kinds, xs)

    def core(self, e: tuple | None) -> tuple | None:
        """The core propagator on an explicit domain over the transformed values."""
        if e is None:
            return None
        if e in self._core:
            return self._core[e]
        exact = all(k != D.SET or s == D.var_hull(k, s) for k, s in zip(self.core_kinds, e))
        if exact:
            out = self._core_once(e)
        else:
            cur = e
            while True:
                res = self._core_once(cur)
                if res is None:
                    out = None
                    break
                nxt = tuple(a & b for a, b in zip(cur, res))
                if any(not s for s in nxt):
                    out = None
                    break
                if nxt == cur:
                    out = cur
                    break
                cur = nxt
        self._core[e] = out
        return out

    def preimage(self, e: tuple | None, d: D.Dom) -> D.Dom | None:
        if e is None:
            return None
        out = []
        it_d = iter(d)
        for s, es in zip(self.specs, e):
            if not es:
                return None
            if s.is_constant:
                continue
            out.append(D.preimage(s, es, next(it_d)))
        if any(not s for s in out):
            return None
        return tuple(out)

    def composed(self, d: D.Dom | None) -> D.Dom | None:
        if d is None:
            return None
        return self.preimage(self.core(self.image(d)), d)

    def core_fixpoint(self, d: D.Dom) -> bool:
        e = self.image(d)
        return self.core(e) == e

    # -- semantic subsumption over the lattice below d
    def derived_subsumed(self, d: D.Dom) -> bool:
        hit = self._dsub.get(d)
        if hit is None:
            hit = self.derived(d)[0] == d and all(
                self.derived_subsumed(p) for p in D.predecessors(self.kinds, d)
            )
            self._dsub[d] = hit
        return hit

    def core_subsumed(self, d: D.Dom) -> bool:
        hit = self._csub.get(d)
        if hit is None:
            hit = self.core_fixpoint(d) and all(
                self.core_subsumed(p) for p in D.predecessors(self.kinds, d)
            )
            self._csub[d] = hit
        return hit

    def relation_tuples(self) -> list[tuple]:
        rel = self.variant.relation or self.entry.relation
        return [a for a in D.assignments(self.kinds, self.universes) if rel(*a)]


@functools.lru_cache(maxsize=None)
def _lab(entry_name: str, variant_name: str) -> Lab:
    e = find_entry(entry_name)
    v = next(x for x in e.all_variants() if x.name == variant_name)
    return Lab(e, v)


def lab(entry: CatalogEntry | str, variant: Variant | str = "core") -> Lab:
    en = entry if isinstance(entry, str) else entry.name
    vn = variant if isinstance(variant, str) else variant.name
    if isinstance(entry, CatalogEntry) and entry not in ALL_ENTRIES:
        vv = variant if isinstance(variant, Variant) else next(x for x in entry.all_variants() if x.name == vn)
        return Lab(entry, vv)
    return _lab(en, vn)


# -- claims ---------------------------------------------------------------------


def _correctness(lb: Lab):
    n = 0
    for d in lb.domains():
        out, _ = lb.derived(d)
        n += 1
        if not D.is_subdomain(out, d):
            return n, f"not contracting on {lb.fmt(d)}: gives {lb.fmt(out)}"
        for p in D.predecessors(lb.kinds, d):
            n += 1
            if not D.is_subdomain(lb.derived(p)[0], out):
                return n, f"not monotonic: {lb.fmt(p)} <= {lb.fmt(d)} but results {lb.fmt(lb.derived(p)[0])} vs {lb.fmt(out)}"
    return n, None


def _induced(lb: Lab):
    rel = lb.variant.relation or lb.entry.relation
    n = 0
    for a in D.assignments(lb.kinds, lb.universes):
        n += 1
        one = D.singleton(a)
        by_view = lb.derived(one)[0] == one
        by_core = lb.core_fixpoint(one)
        expect = bool(rel(*a))
        if not by_view == by_core == expect:
            return n, (
                f"assignment {', '.join(D.fmt_value(v) for v in a)}: derived accepts={by_view}, "
                f"core accepts image={by_core}, relation={expect}"
            )
    return n, None


def _contraction(lb: Lab):
    n = 0
    for d in lb.domains():
        n += 1
        try:
            out, _ = lb.derived(d)
            e = lb.image(d)
            core_out = lb.core(e)
        except ContractViolation as exc:
            return n, f"{lb.fmt(d)}: {exc}"
        if core_out is not None and not all(a <= b for a, b in zip(core_out, e)):
            return n, f"core widens image of {lb.fmt(d)}"
        if not D.is_subdomain(out, d):
            return n, f"derived widens {lb.fmt(d)} to {lb.fmt(out)}"
    return n, None


def _fixpoint(lb: Lab):
    n = 0
    for d in lb.domains():
        n += 1
        out, st = lb.derived(d)
        # d is a fixpoint of the derived propagator iff phi(d) is one of the core
        if (out == d) != lb.core_fixpoint(d):
            return n, f"{lb.fmt(d)}: derived fixpoint={out == d}, core fixpoint on image={lb.core_fixpoint(d)}"
        if out is None:
            continue
        again = lb.derived(out)[0]
        pe = lb.core(lb.image(d))
        # idempotence of p on phi(d) carries over to the composition on d
        if pe is not None and lb.core(pe) == pe:
            comp = lb.composed(d)
            if lb.composed(comp) != comp:
                return n, f"{lb.fmt(d)}: core idempotent on the image but the composition is not"
        if st in (PropStatus.AT_FIXPOINT, PropStatus.SUBSUMED) and again != out:
            return n, f"{lb.fmt(d)}: reported {st.value} but a second run changes {lb.fmt(out)} to {lb.fmt(again)}"
    return n, None


def _subsumption(lb: Lab):
    n = 0
    for d in lb.domains():
        n += 1
        ds, cs = lb.derived_subsumed(d), lb.core_subsumed(d)
        if ds != cs:
            return n, f"{lb.fmt(d)}: derived subsumed={ds}, core subsumed by image={cs}"
        out, st = lb.derived(d)
        # the status describes the domain left behind by the run
        if st is PropStatus.SUBSUMED and out is not None and not lb.derived_subsumed(out):
            return n, f"{lb.fmt(d)}: reported subsumed but can still prune below {lb.fmt(out)}"
    return n, None


def _derivation(lb: Lab):
    n = 0
    for d in lb.domains():
        n += 1
        out, comp = lb.derived(d)[0], lb.composed(d)
        if out != comp:
            return n, f"{lb.fmt(d)}: views give {lb.fmt(out)}, composition gives {lb.fmt(comp)}"
    return n, None


def _forward_checking(kinds, tuples):
    def run(d):
        out = []
        fixed = {i: next(iter(s)) for i, s in enumerate(d) if len(s) == 1}
        for i, s in enumerate(d):
            keep = frozenset(
                t[i] for t in tuples
                if t[i] in s and all(t[j] == v for j, v in fixed.items() if j != i)
            )
            if not keep:
                return None
            out.append(keep)
        return tuple(out)

    return run


def _completeness(lb: Lab, level: str):
    tuples = lb.relation_tuples()
    if level in (DOMAIN, RANGE, BOUNDS_D, BOUNDS_Z):
        ref = complete_propagator(tuples, level, lb.kinds)
        ok = lambda d, out: D.is_subdomain(out, ref(d))  # noqa: E731
    elif level == VALUE:
        ref = _forward_checking(lb.kinds, tuples)
        ok = lambda d, out: D.is_subdomain(out, ref(d))  # noqa: E731
    elif level == BOUNDS_R:
        form = lb.variant.linear
        if form is None:
            raise ValueError(f"{lb.name}: no linear form for a real-relaxation check")
        coeffs, rel, rhs = form
        ok = lambda d, out: bounds_r_contains(coeffs, rel, rhs, d, out)  # noqa: E731
    else:
        raise ValueError(f"unknown completeness level {level!r}")
    n = 0
    for d in lb.domains():
        n += 1
        out = lb.derived(d)[0]
        if not ok(d, out):
            return n, f"{lb.fmt(d)}: propagator gives {lb.fmt(out)}, {level} requires stronger pruning"
    return n, None


def _fixpoint_run(lb: Lab, d: D.Dom, decompose: bool) -> D.Dom | None:
    from .decomposition import build_decomposition

    sp = Space(checked=True)
    xs = D.build_vars(sp, lb.kinds, d)
    if decompose:
        rec = build_decomposition(lb.entry.post, lb.specs, sp, xs, include_identity=True)
        if not rec.berge_acyclic():
            raise AssertionError(f"{lb.name}: decomposition is not Berge-acyclic")
    else:
        it_x = iter(xs)
        lb.entry.post(sp, [s.apply(None) if s.is_constant else s.apply(next(it_x)) for s in lb.specs])
    sp.fixpoint()
    return D.read_vars(sp, lb.kinds, xs)


def _decomposition(lb: Lab):
    n = 0
    for d in lb.domains():
        n += 1
        a, b = _fixpoint_run(lb, d, False), _fixpoint_run(lb, d, True)
        if a != b:
            return n, f"{lb.fmt(d)}: views reach {lb.fmt(a)}, decomposition reaches {lb.fmt(b)}"
    return n, None


_CHECKS = {
    "decomposition": _decomposition,
    "correctness": _correctness,
    "induced": _induced,
    "contraction": _contraction,
    "fixpoint": _fixpoint,
    "subsumption": _subsumption,
    "derivation": _derivation,
}


def check_theorem(
    entry: CatalogEntry | str,
    variant: Variant | str,
    claim: str,
    level: str | None = None,
) -> TheoremResult:
    """Exhaustively check ``claim`` for one derived propagator.

    ``claim`` is one of :data:`CLAIMS` or ``"completeness"``; for the latter
    ``level`` defaults to the variant's declared level.
    """
    lb = lab(entry, variant)
    if claim == "completeness":
        level = level or lb.variant.level
        if level is None:
            return TheoremResult(claim, lb.entry.name, lb.variant.name, True, 0, note="no level claimed")
        n, cex = _completeness(lb, level)
        claim = f"completeness({level})"
    else:
        n, cex = _CHECKS[claim](lb)
    return TheoremResult(claim, lb.entry.name, lb.variant.name, cex is None, n, cex)


# -- hull properties of views ------------------------------------------------


@dataclass(frozen=True)
class HullProperties:
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def _ihull(values: frozenset) -> frozenset:
    return frozenset(range(min(values), max(values) + 1)) if values else values


def hull_property(spec: ViewSpec, universe: Sequence[int] = tuple(range(-4, 5))) -> HullProperties:
    """Decide hull injectivity and surjectivity of an integer view on ``universe``.

    Injective: phi^-1(hull(C)) = hull(phi^-1(C)) for every non-empty set C of
    image values.  Surjective: phi(hull(d)) = hull(phi(d)) for every
    non-empty domain d within the universe.
    """
    u = frozenset(universe)
    img = D.image(spec, u)
    injective = all(
        D.preimage(spec, _ihull(c), u) == _ihull(D.preimage(spec, c, u))
        for c in D.subsets(img) if c
    )
    surjective = all(
        D.image(spec, _ihull(d)) == _ihull(D.image(spec, d)) for d in D.subsets(u) if d
    )
    return HullProperties(injective, surjective)


# -- view lemmas on explicit constraints --------------------------------------


def view_preimage(specs: Sequence[ViewSpec], c, universes: Sequence[Sequence]) -> frozenset:
    """phi^-1(c) for a constraint over transformed values, as base tuples."""
    c = frozenset(c)
    return frozenset(
        a for a in D.assignments([D.INT] * len(specs), universes)
        if tuple(D.phi(s, v) for s, v in zip(specs, a)) in c
    )


def relax_tuples(tuples, arity: int) -> tuple[frozenset, ...]:
    return tuple(frozenset(t[i] for t in tuples) for i in range(arity))


# -- extensional cores for completeness transfer -------------------------------


def _distinct(*vs):
    return len(set(vs)) == len(vs)


def _ext(kinds, rel):
    return lambda sp, a: Extensional(sp, a, kinds, rel)


_I3 = tuple(range(-1, 3))
ORACLE_ENTRIES: tuple[CatalogEntry, ...] = (
    CatalogEntry(
        "ext_alldiff", "extensional", (D.INT,) * 3, _ext((D.INT,) * 3, _distinct),
        _distinct, DOMAIN, (_I3,) * 3,
        (
            Variant("offsets", (cat.I, cat.V.offset(1), cat.V.offset(2)), DOMAIN,
                    lambda x, y, z: _distinct(x, y + 1, z + 2)),
            Variant("minus", (cat.I, cat.M, cat.I), DOMAIN, lambda x, y, z: _distinct(x, -y, z)),
            Variant("scale", (cat.V.scale(2), cat.I, cat.I), DOMAIN, lambda x, y, z: _distinct(2 * x, y, z)),
        ),
    ),
    CatalogEntry(
        "ext_sum", "extensional", (D.INT,) * 3, _ext((D.INT,) * 3, lambda x, y, z: x + y == z),
        lambda x, y, z: x + y == z, DOMAIN, (_I3,) * 3,
        (
            Variant("scale", (cat.V.scale(2), cat.I, cat.I), DOMAIN, lambda x, y, z: 2 * x + y == z),
            Variant("minus_offset", (cat.I, cat.V.compose(cat.M, cat.V.offset(1)), cat.I), DOMAIN,
                    lambda x, y, z: x - (y + 1) == z),
        ),
    ),
    CatalogEntry(
        "ext_xor", "extensional", (D.BOOL,) * 3, _ext((D.BOOL,) * 3, lambda a, b, c: (a ^ b) == c),
        lambda a, b, c: (a ^ b) == c, DOMAIN, ((0, 1),) * 3,
        (Variant("negated", (cat.NEG, cat.I, cat.I), DOMAIN, lambda a, b, c: ((1 - a) ^ b) == c),),
    ),
)

ALL_ENTRIES: tuple[CatalogEntry, ...] = cat.CATALOG + ORACLE_ENTRIES


def find_entry(name: str) -> CatalogEntry:
    for e in ALL_ENTRIES:
        if e.name == name:
            return e
    raise KeyError(name)


def all_pairs(entries: Sequence[CatalogEntry] = cat.CATALOG):
    for e in entries:
        for v in e.all_variants():
            yield e, v
