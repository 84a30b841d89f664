import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from viewprop import iterators as it
from viewprop import views as V
from viewprop.engine import Space
from viewprop.kernel import EMPTY, RangeSeq, ValOverflowError
from viewprop.oracle.events import view_event_misses
from viewprop.variables import Ev, ModEvent

R = lambda *rs: RangeSeq(rs)  # noqa: E731

INT_SPECS = [
    V.IDENTITY, V.offset(2), V.offset(-5), V.minus(), V.scale(2), V.scale(3),
    V.compose(V.minus(), V.offset(1)), V.compose(V.minus(), V.scale(2)),
    V.compose(V.offset(3), V.scale(2)),
]


def dom(view) -> frozenset:
    return it.to_seq(view.getdom()).to_set()


# -- examples --------------------------------------------------------------------


def test_offset_reads():
    sp = Space()
    v = V.offset(2).apply(sp.int_var(1, 3))
    assert (v.min(), v.max()) == (3, 5)


def test_scale_write_through():
    sp = Space()
    y = sp.int_var(1, 4)
    V.scale(2).apply(y).adjdom(R((3, 9)))
    assert y.snapshot() == R((2, 4))


def test_constant_view():
    sp = Space()
    c = V.constant(0).apply()
    c.attach(sp)
    assert it.to_seq(c.getdom()) == R((0, 0))
    assert c.setdom(EMPTY) is ModEvent.FAILED and sp.failed


def test_bool_negation():
    sp = Space()
    b = sp.bool_var()
    nb = V.bool_neg().apply(b)
    nb.one()
    assert b.value() == 0
    c = sp.bool_var(1)
    nc = V.bool_neg().apply(c)
    assert nc.is_assigned() and nc.value() == 0
    d = sp.bool_var(0)
    assert V.bool_neg().apply(d).zero() is ModEvent.FAILED and sp.failed


def test_int_of_bool():
    sp = Space()
    b = sp.bool_var()
    x = V.int_of_bool().apply(b)
    assert dom(x) == {0, 1}
    x.adjmin(1)
    assert b.value() == 1


def test_complement_view_bounds():
    sp = Space()
    s = sp.set_var([1], R((1, 3)))
    c = V.set_complement(0, 5).apply(s)
    assert it.to_seq(c.getglb()) == R((0, 0), (4, 5))
    assert it.to_seq(c.getlub()) == R((0, 0), (2, 5))
    assert c.adjglb(R((2, 2))) is ModEvent.GLB
    assert s.lub == R((1, 1), (3, 3))


def test_singleton_view():
    sp = Space()
    x = sp.int_var(2, 4)
    s = V.singleton_set().apply(x)
    assert it.to_seq(s.getlub()) == R((2, 4)) and it.to_seq(s.getglb()) == EMPTY
    s.adjglb(R((3, 3)))
    assert x.val() == 3
    sp2 = Space()
    s2 = V.singleton_set().apply(sp2.int_var(2, 4))
    assert s2.adjglb(R((2, 3))) is ModEvent.FAILED and sp2.failed


def test_const_set_view():
    sp = Space()
    z = V.const_set(()).apply()
    z.attach(sp)
    assert z.adjglb(R((1, 1))) is ModEvent.FAILED and sp.failed


def test_transform_events_examples():
    assert V.minus().transform_events(Ev.LBC) == Ev.UBC
    assert V.offset(7).transform_events(Ev.LBC | Ev.UBC) == Ev.LBC | Ev.UBC
    assert V.set_complement(0, 5).transform_events(Ev.GLB) == Ev.LUB
    assert V.constant(3).transform_events(Ev.DMC) == Ev.NONE
    assert V.bool_neg().transform_events(Ev.VAL) == Ev.VAL


def test_compose_examples():
    d = V.compose(V.minus(), V.offset(4))
    assert [d.phi(v) for v in (-1, 0, 2)] == [-3, -4, -6]
    assert V.compose(V.offset(0), V.IDENTITY).phi(5) == 5
    sp = Space()
    x = sp.int_var([-3, 1, 2, 7])
    mm = V.compose(V.minus(), V.minus()).apply(x)
    assert dom(mm) == {-3, 1, 2, 7}


def test_invalid_specs():
    with pytest.raises(ValueError):
        V.scale(0)
    assert V.compose(V.offset(1), V.constant(2)).phi() == 3
    with pytest.raises(ValueError):
        V.compose(V.constant(1), V.offset(1))
    with pytest.raises(ValueError):
        V.compose(V.singleton_set(), V.set_complement(0, 3))


def test_overflow_is_reported():
    with pytest.raises(ValOverflowError):
        V.scale(2).phi(2**62)


# -- properties --------------------------------------------------------------------


@pytest.mark.parametrize("spec", INT_SPECS, ids=repr)
def test_injective_on_wide_universe(spec):
    img = [spec.phi(v) for v in range(-16, 17)]
    assert len(set(img)) == len(img)
    assert all(spec.phi_inv(w) == v for v, w in zip(range(-16, 17), img))


@pytest.mark.parametrize("spec", INT_SPECS, ids=repr)
@given(st.frozensets(st.integers(-8, 8), min_size=1))
def test_round_trip(spec, d):
    sp = Space(checked=True)
    x = sp.int_var(d)
    view = spec.apply(x)
    assert view.setdom(view.getdom()) is ModEvent.NONE
    assert x.snapshot().to_set() == d


def _commutes(spec, d, r):
    sp = Space()
    x = sp.int_var(d)
    spec.apply(x).adjdom(RangeSeq.from_values(r))
    want = {v for v in d if spec.phi(v) in r}
    got = set() if sp.failed else x.snapshot().to_set()
    return got == want and sp.failed == (not want)


@pytest.mark.parametrize("spec", INT_SPECS, ids=repr)
@settings(max_examples=300)
@given(st.frozensets(st.integers(-8, 8), min_size=1), st.frozensets(st.integers(-30, 30)))
def test_adjdom_commutes_with_explicit_sets(spec, d, r):
    assert _commutes(spec, d, r)


@pytest.mark.parametrize("spec", INT_SPECS, ids=repr)
def test_adjdom_commutes_exhaustive_small(spec):
    vals = range(-3, 4)
    img = sorted({spec.phi(v) for v in vals})
    doms = [frozenset(c) for n in range(1, len(vals) + 1) for c in itertools.combinations(vals, n)]
    windows = [frozenset(w for w in img if lo <= w <= hi) for lo in img for hi in img if lo <= hi]
    for d in doms:
        for r in windows + [frozenset()]:
            assert _commutes(spec, d, r), (d, r)


@pytest.mark.parametrize("spec", INT_SPECS, ids=repr)
@given(st.frozensets(st.integers(-8, 8), min_size=1), st.integers(-20, 20))
def test_bounds_ops_match_sets(spec, d, n):
    for op, keep in (("adjmin", lambda w: w >= n), ("adjmax", lambda w: w <= n)):
        sp = Space()
        x = sp.int_var(d)
        getattr(spec.apply(x), op)(n)
        want = {v for v in d if keep(spec.phi(v))}
        assert (set() if sp.failed else x.snapshot().to_set()) == want


EVENT_CASES = [
    (V.IDENTITY, V.INT, range(-2, 3)),
    (V.offset(3), V.INT, range(-2, 3)),
    (V.minus(), V.INT, range(-2, 3)),
    (V.scale(2), V.INT, range(-2, 3)),
    (V.compose(V.minus(), V.offset(1)), V.INT, range(-2, 3)),
    (V.bool_neg(), V.BOOL, (0, 1)),
    (V.int_of_bool(), V.BOOL, (0, 1)),
    (V.compose(V.int_of_bool(), V.bool_neg()), V.BOOL, (0, 1)),
    (V.singleton_set(), V.INT, range(0, 4)),
    (V.set_complement(0, 3), V.SET, range(0, 4)),
    (V.compose(V.set_complement(0, 3), V.singleton_set()), V.INT, range(0, 4)),
]


@pytest.mark.parametrize("spec, kind, universe", EVENT_CASES, ids=lambda c: repr(c) if isinstance(c, V.ViewSpec) else None)
def test_view_events_are_delivered(spec, kind, universe):
    assert view_event_misses(spec, kind, universe) == []


def test_event_checker_catches_a_wrong_translation():
    class Unswapped(V.ViewSpec):
        def transform_events(self, kinds):
            return kinds

    wrong = Unswapped(V.minus().steps)
    assert view_event_misses(wrong, V.INT, range(-2, 3))
