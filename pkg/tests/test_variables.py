import pytest
from hypothesis import given
from hypothesis import strategies as st

from viewprop import iterators as it
from viewprop.engine import Space
from viewprop.kernel import RangeSeq
from viewprop.variables import ContractViolation, Ev, ModEvent

R = lambda *rs: RangeSeq(rs)  # noqa: E731


def int_var(*rs, checked=False):
    sp = Space(checked=checked)
    return sp, sp.int_var(R(*rs))


def test_bounds_examples():
    _, x = int_var((1, 5))
    assert x.adjmin(3) is ModEvent.BOUNDS and x.getdom().min() == 3
    assert x.snapshot() == R((3, 5))
    _, x = int_var((1, 5))
    assert x.adjmin(0) is ModEvent.NONE and x.snapshot() == R((1, 5))
    _, x = int_var((1, 3), (7, 9))
    assert x.adjmax(5) is ModEvent.BOUNDS and x.snapshot() == R((1, 3))


def test_set_valued_examples():
    _, x = int_var((1, 5))
    x.adjdom(R((3, 8)))
    assert x.snapshot() == R((3, 5))
    _, x = int_var((1, 5))
    assert x.excdom(R((3, 3))) is ModEvent.DOMAIN
    assert x.snapshot() == R((1, 2), (4, 5))
    sp, x = int_var((1, 2))
    assert x.adjdom(R((5, 6))) is ModEvent.FAILED and sp.failed


def test_assignment_dominates():
    _, x = int_var((1, 3))
    assert x.adjmin(3) is ModEvent.ASSIGNED
    assert x.assigned() and x.val() == 3


def test_bool_examples():
    sp = Space()
    b = sp.bool_var()
    assert not b.is_assigned()
    assert b.one() is ModEvent.ASSIGNED and b.value() == 1
    assert b.one() is ModEvent.NONE
    c = sp.bool_var(0)
    assert c.one() is ModEvent.FAILED and sp.failed


def test_set_examples():
    sp = Space()
    s = sp.set_var((), R((1, 3)))
    assert s.adjglb(R((2, 2))) is ModEvent.GLB and s.glb == R((2, 2))
    assert s.adjlub(R((1, 2))) is ModEvent.LUB and s.lub == R((1, 2))
    s2 = sp.set_var([2], R((1, 3)))
    assert s2.adjlub(R((3, 3))) is ModEvent.FAILED and sp.failed


def test_set_assignment_and_membership():
    sp = Space()
    s = sp.set_var([1], [1, 2])
    assert s.exclude(5) is ModEvent.NONE
    assert s.include(2) is ModEvent.ASSIGNED and s.assigned()


def test_setdom_contract_in_checked_mode():
    _, x = int_var((1, 3), checked=True)
    with pytest.raises(ContractViolation):
        x.setdom(R((0, 2)))
    _, y = int_var((1, 3))
    assert y.setdom(R((2, 3))) is ModEvent.BOUNDS


# -- random operation sequences against an explicit-set shadow ------------------

_int_op = st.one_of(
    st.tuples(st.just("adjmin"), st.integers(-6, 6)),
    st.tuples(st.just("adjmax"), st.integers(-6, 6)),
    st.tuples(st.just("eq"), st.integers(-6, 6)),
    st.tuples(st.just("nq"), st.integers(-6, 6)),
    st.tuples(st.just("adjdom"), st.frozensets(st.integers(-6, 6))),
    st.tuples(st.just("excdom"), st.frozensets(st.integers(-6, 6))),
)


def _shadow(op, arg, cur):
    return {
        "adjmin": lambda: {v for v in cur if v >= arg},
        "adjmax": lambda: {v for v in cur if v <= arg},
        "eq": lambda: cur & {arg},
        "nq": lambda: cur - {arg},
        "adjdom": lambda: cur & arg,
        "excdom": lambda: cur - arg,
    }[op]()


class _Spy(Space):
    def __init__(self):
        super().__init__()
        self.fired = []

    def notify(self, idx, kinds):
        self.fired.append(kinds)


@given(st.frozensets(st.integers(-5, 5), min_size=1), st.lists(_int_op, max_size=12))
def test_int_ops_match_shadow(init, ops):
    sp = _Spy()
    x = sp.int_var(init)
    cur = set(init)
    for op, arg in ops:
        new = _shadow(op, arg, cur)
        before = len(sp.fired)
        a = RangeSeq.from_values(arg) if isinstance(arg, frozenset) else arg
        me = getattr(x, op)(a)
        if not new:
            assert me is ModEvent.FAILED and sp.failed
            return
        assert x.snapshot().to_set() == new
        assert new <= cur
        # exact event classification
        if new == cur:
            assert me is ModEvent.NONE and len(sp.fired) == before
        elif len(new) == 1:
            assert me is ModEvent.ASSIGNED and sp.fired[-1] & Ev.VAL
        elif min(new) != min(cur) or max(new) != max(cur):
            assert me is ModEvent.BOUNDS
            assert bool(sp.fired[-1] & Ev.LBC) == (min(new) != min(cur))
            assert bool(sp.fired[-1] & Ev.UBC) == (max(new) != max(cur))
        else:
            assert me is ModEvent.DOMAIN and sp.fired[-1] == Ev.DMC
        cur = new


_set_op = st.tuples(st.sampled_from(["include", "exclude", "adjglb", "adjlub"]),
                    st.one_of(st.integers(0, 5), st.frozensets(st.integers(0, 5))))


@given(st.frozensets(st.integers(0, 5)), st.frozensets(st.integers(0, 5)), st.lists(_set_op, max_size=10))
def test_set_ops_match_shadow(g, extra, ops):
    sp = Space()
    s = sp.set_var(g, g | extra)
    glb, lub = set(g), set(g | extra)
    for op, arg in ops:
        if op in ("include", "exclude") and isinstance(arg, frozenset):
            continue
        if op in ("adjglb", "adjlub") and not isinstance(arg, frozenset):
            arg = frozenset({arg})
        ng, nl = set(glb), set(lub)
        if op == "include":
            ng.add(arg)
        elif op == "exclude":
            nl.discard(arg)
        elif op == "adjglb":
            ng |= arg
        else:
            nl &= arg
        me = getattr(s, op)(RangeSeq.from_values(arg) if isinstance(arg, frozenset) else arg)
        if not ng <= nl:
            assert me is ModEvent.FAILED and sp.failed
            return
        assert (s.glb.to_set(), s.lub.to_set()) == (ng, nl)
        assert glb <= ng and nl <= lub
        if (ng, nl) == (glb, lub):
            assert me is ModEvent.NONE
        elif ng == nl:
            assert me is ModEvent.ASSIGNED
        else:
            assert me in (ModEvent.GLB, ModEvent.LUB)
        glb, lub = ng, nl


def test_getdom_is_an_iterator():
    _, x = int_var((1, 2), (5, 5))
    assert it.to_seq(x.getdom()) == R((1, 2), (5, 5))
    assert 5 in x and 3 not in x and x.size() == 3
