import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from viewprop import views as V
from viewprop.engine import PropStatus, Space
from viewprop.kernel import ExtensionalConstraint, RangeSeq
from viewprop.oracle import (
    COMPLETENESS_LEVELS,
    Decomposition,
    check_theorem,
    complete_propagator,
    dom_relax,
    hull_property,
    induced_constraint,
)
from viewprop.oracle import domains as D
from viewprop.oracle.decomposition import IntChannel, build_decomposition
from viewprop.oracle.extensional import bounds_r_contains, engine_function
from viewprop.oracle.theorems import ALL_ENTRIES, lab, relax_tuples, view_preimage
from viewprop.propagators import BoolClause, Eq, LinearEq
from viewprop.propagators.catalog import DOMAIN, CatalogEntry, Variant

INT2 = [D.INT, D.INT]
fs = frozenset


def test_dom_relax_examples():
    r = dom_relax(ExtensionalConstraint((0, 1), {(1, 2), (2, 1)}))
    assert (r[0], r[1]) == (fs({1, 2}), fs({1, 2}))
    r = dom_relax(ExtensionalConstraint((0, 1), {(1, 1)}))
    assert (r[0], r[1]) == (fs({1}), fs({1}))
    assert dom_relax(ExtensionalConstraint((0, 1))).failed


def test_dom_relax_of_sum_tuples():
    listed = {(2, 1, 1), (3, 1, 2), (3, 2, 1), (4, 2, 2)}
    r = dom_relax(ExtensionalConstraint((0, 1, 2), listed))
    assert (r[0], r[1], r[2]) == (fs({2, 3, 4}), fs({1, 2}), fs({1, 2}))
    # the full relation over {1..4} also contains (4,1,3) and (4,3,1)
    full = ExtensionalConstraint.from_predicate((0, 1, 2), [range(1, 5)] * 3, lambda x, y, z: x == y + z)
    assert full.tuples - listed == {(4, 1, 3), (4, 3, 1)}
    r = dom_relax(full)
    assert (r[0], r[1], r[2]) == (fs({2, 3, 4}), fs({1, 2, 3}), fs({1, 2, 3}))


def test_complete_propagator_examples():
    eq = [(v, v) for v in range(1, 5)]
    assert complete_propagator(eq, "domain", INT2)((fs({1, 3}), fs({2, 3}))) == (fs({3}), fs({3}))
    double = [(x, y) for x in range(1, 5) for y in range(1, 5) if x == 2 * y]
    full = (fs(range(1, 5)), fs(range(1, 5)))
    assert complete_propagator(double, "boundsZ", INT2)(full) == (fs({2, 3, 4}), fs({1, 2}))


def test_range_and_bounds_d_differ():
    double = [(x, y) for x in range(1, 5) for y in range(1, 5) if x == 2 * y]
    rng = complete_propagator(double, "range", INT2)
    bd = complete_propagator(double, "boundsD", INT2)
    witnesses = [d for d in D.all_domains(INT2, [range(1, 5)] * 2) if rng(d) != bd(d)]
    d = (fs({4}), fs({1, 3}))
    assert d in witnesses
    assert rng(d) == (fs({4}), fs({2})) and bd(d) is None


def _function_props(run, kinds, universes, contracting):
    for d in D.all_domains(kinds, universes):
        out = run(d)
        if contracting:
            assert D.is_subdomain(out, d)
            assert run(out) == out
        for p in D.predecessors(kinds, d):
            assert D.is_subdomain(run(p), out)


@pytest.mark.parametrize("level", COMPLETENESS_LEVELS)
@pytest.mark.parametrize("rel", [lambda x, y: x < y, lambda x, y: x + y == 2, lambda x, y: x != y, lambda x, y: x == 2 * y])
def test_complete_propagators_are_propagators(level, rel):
    u = range(-1, 3)
    tuples = [t for t in itertools.product(u, u) if rel(*t)]
    # range and boundsZ read hull(d) and may put holes back, so only the
    # domain level is a contracting, idempotent function; all are monotonic
    _function_props(complete_propagator(tuples, level, INT2), INT2, [u, u], level == "domain")


def test_completeness_levels_are_ordered():
    u = range(-1, 3)
    tuples = [t for t in itertools.product(u, u, u) if t[0] + t[1] == 2 * t[2] and t[0] != t[1]]
    kinds = [D.INT] * 3
    f = {lv: complete_propagator(tuples, lv, kinds) for lv in COMPLETENESS_LEVELS}
    for d in D.all_domains(kinds, [u] * 3):
        assert D.is_subdomain(f["domain"](d), f["range"](d))
        assert D.is_subdomain(f["domain"](d), f["boundsD"](d))
        assert D.is_subdomain(f["range"](d), f["boundsZ"](d))
        assert D.is_subdomain(f["boundsD"](d), f["boundsZ"](d))


def test_induced_constraint_examples():
    eq = engine_function(lambda sp, a: Eq(sp, *a), INT2)
    assert induced_constraint(eq, INT2, [(1, 2)] * 2).tuples == {(1, 1), (2, 2)}
    double = engine_function(lambda sp, a: Eq(sp, *a), INT2, (V.IDENTITY, V.scale(2)))
    assert induced_constraint(double, INT2, [range(1, 5)] * 2).tuples == {(2, 1), (4, 2)}
    clause = engine_function(lambda sp, a: BoolClause(sp, a), [D.BOOL] * 2)
    assert induced_constraint(clause, [D.BOOL] * 2, [(0, 1)] * 2).tuples == {(0, 1), (1, 0), (1, 1)}


SPECS = [V.IDENTITY, V.offset(2), V.minus(), V.scale(2), V.compose(V.minus(), V.offset(1))]
U = tuple(range(-2, 3))
_image_pairs = st.frozensets(st.tuples(st.integers(-6, 6), st.integers(-6, 6)))


@settings(max_examples=200)
@given(st.sampled_from(SPECS), st.sampled_from(SPECS), _image_pairs, _image_pairs)
def test_preimage_commutes_with_intersection(s1, s2, c1, c2):
    specs, us = (s1, s2), (U, U)
    assert view_preimage(specs, c1 & c2, us) == view_preimage(specs, c1, us) & view_preimage(specs, c2, us)


@settings(max_examples=200)
@given(st.sampled_from(SPECS), st.sampled_from(SPECS), _image_pairs)
def test_preimage_is_domain_injective(s1, s2, c):
    specs, us = (s1, s2), (U, U)
    # restrict to phi-constraints: tuples inside the image of the universe
    img = [fs(D.phi(s, v) for v in U) for s in specs]
    c = fs(t for t in c if t[0] in img[0] and t[1] in img[1])
    relaxed = relax_tuples(c, 2)
    box = fs(itertools.product(*relaxed))
    lhs = relax_tuples(view_preimage(specs, box, us), 2) if c else (fs(), fs())
    rhs = relax_tuples(view_preimage(specs, c, us), 2)
    assert lhs == rhs


def test_hull_property_examples():
    assert hull_property(V.offset(3)).bijective
    assert hull_property(V.IDENTITY).bijective
    h = hull_property(V.scale(2))
    assert h.injective and not h.surjective


def test_named_claim_examples():
    assert check_theorem("eq", "minus", "correctness").passed
    assert check_theorem("ext_alldiff", "offsets", "completeness", DOMAIN).passed
    assert not check_theorem("linear_eq3_odd", "scale_all", "completeness", "boundsZ").passed
    assert check_theorem("linear_eq3_odd", "scale_all", "completeness", "boundsR").passed
    assert check_theorem("alldiff_bounds", "scale", "completeness").note == "no level claimed"


def test_bounds_r_projection():
    # over the reals, 2x + 2y = 1 on [-1,1]^2 projects to x, y in [-1/2, 1]
    d = (fs({-1, 0, 1}), fs({-1, 0, 1}))
    assert not bounds_r_contains((2, 2), "=", 1, d, d)
    assert bounds_r_contains((2, 2), "=", 1, d, (fs({0, 1}), fs({0, 1})))
    # but a propagator that fails is stronger than the real relaxation allows
    assert bounds_r_contains((2, 2), "=", 1, d, None)
    assert not bounds_r_contains((1, 1), "=", 5, d, d)


# -- the checker must reject broken propagators ------------------------------------


def _mutant(name, post, level=DOMAIN):
    return CatalogEntry(name, "mutant", (D.INT, D.INT), post, lambda x, y: x == y, level,
                        (tuple(range(0, 3)),) * 2)


class _GreedyEq(Eq):
    def propagate(self):
        st_ = super().propagate()
        if not self.x.assigned():
            self.check(self.x.adjmax(self.x.max() - 1))
        return st_


def test_checker_catches_solution_loss():
    e = _mutant("greedy_eq", lambda sp, a: _GreedyEq(sp, *a))
    assert not check_theorem(e, e.core, "correctness").passed or not check_theorem(e, e.core, "induced").passed


def test_checker_catches_weak_propagation():
    e = _mutant("weak_eq", lambda sp, a: LinearEq(sp, [a[0], V.minus().apply(a[1])], 0))
    r = check_theorem(e, e.core, "completeness", DOMAIN)
    assert not r.passed and "requires stronger pruning" in r.counterexample


def test_checker_catches_wrong_subsumption():
    class Lazy(Eq):
        def propagate(self):
            super().propagate()
            return PropStatus.SUBSUMED

    e = _mutant("lazy_eq", lambda sp, a: Lazy(sp, *a))
    assert not check_theorem(e, e.core, "subsumption").passed


# -- decompositions ---------------------------------------------------------------


def test_decomposition_of_scaled_equality():
    sp = Space()
    x, y = sp.int_var(1, 4), sp.int_var(1, 4)
    rec = build_decomposition(lambda s, a: Eq(s, *a), (V.IDENTITY, V.scale(2)), sp, [x, y])
    assert len(rec.aux) == 1 and len(rec.channels) == 1
    assert isinstance(rec.channels[0], IntChannel)
    assert rec.berge_acyclic()
    sp.fixpoint()
    assert x.snapshot() == RangeSeq.from_values([2, 4]) and y.snapshot() == RangeSeq.interval(1, 2)


def test_identity_decomposition_adds_only_equalities():
    sp = Space()
    x, y = sp.int_var(1, 4), sp.int_var(1, 4)
    rec = build_decomposition(lambda s, a: Eq(s, *a), (V.IDENTITY, V.IDENTITY), sp, [x, y], include_identity=True)
    assert len(rec.channels) == 2
    assert all(c.spec.is_identity for c in rec.channels)
    sp2 = Space()
    rec = build_decomposition(lambda s, a: Eq(s, *a), (V.IDENTITY, V.IDENTITY), sp2, [sp2.int_var(1, 4), sp2.int_var(1, 4)])
    assert rec.channels == []


def test_berge_cycle_detected():
    rec = Decomposition(scopes=[("core", fs({0, 1})), ("channel", fs({0, 2})), ("channel", fs({1, 2}))])
    assert not rec.berge_acyclic()
    rec = Decomposition(scopes=[("core", fs({0, 1})), ("core", fs({0, 1}))])
    assert not rec.berge_acyclic()
    assert Decomposition(scopes=[("core", fs({3, 4})), ("channel", fs({0, 3})), ("channel", fs({1, 4}))]).berge_acyclic()


CHEAP = [(e, v) for e in ALL_ENTRIES for v in e.all_variants()
         if len(lab(e, v).domains()) <= 4000 and v.name != "core"]


@pytest.mark.parametrize("e, v", CHEAP, ids=[f"{e.name}/{v.name}" for e, v in CHEAP])
def test_decomposition_reaches_same_fixpoint(e, v):
    r = check_theorem(e, v, "decomposition")
    assert r.passed, str(r)
