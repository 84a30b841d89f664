import pytest
from hypothesis import given
from hypothesis import strategies as st

import laws
from viewprop import iterators as it
from viewprop.kernel import RangeSeq

R = lambda *rs: RangeSeq(rs)  # noqa: E731
seqs = st.frozensets(st.integers(-12, 12)).map(RangeSeq.from_values)


def I(*rs):
    return it.SeqIter(R(*rs))


def seq(r):
    return it.to_seq(r)


@pytest.mark.parametrize("a, b, want", [
    (((0, 5),), ((3, 8),), ((3, 5),)),
    (((1, 2),), ((4, 5),), ()),
    (((1, 3), (7, 9)), ((2, 8),), ((2, 3), (7, 8))),
])
def test_inter_examples(a, b, want):
    assert seq(it.inter(I(*a), I(*b))) == R(*want)
    assert R(*want).to_set() == R(*a).to_set() & R(*b).to_set()


@pytest.mark.parametrize("a, b, want", [
    (((1, 2),), ((3, 4),), ((1, 4),)),
    (((1, 2),), (), ((1, 2),)),
    (((1, 3), (8, 9)), ((2, 5),), ((1, 5), (8, 9))),
])
def test_union_examples(a, b, want):
    assert seq(it.union_(I(*a), I(*b))) == R(*want)
    assert R(*want).to_set() == R(*a).to_set() | R(*b).to_set()


@pytest.mark.parametrize("a, b, want", [
    (((1, 5),), ((3, 3),), ((1, 2), (4, 5))),
    (((1, 5),), (), ((1, 5),)),
    (((1, 3), (5, 7)), ((2, 6),), ((1, 1), (7, 7))),
])
def test_diff_examples(a, b, want):
    assert seq(it.diff(I(*a), I(*b))) == R(*want)
    assert R(*want).to_set() == R(*a).to_set() - R(*b).to_set()


def test_compl_examples():
    assert seq(it.compl(I((2, 3)), (0, 5))) == R((0, 1), (4, 5))
    assert seq(it.compl(I(), (0, 5))) == R((0, 5))
    assert seq(it.compl(I((0, 5)), (0, 5))) == R()


def test_offset_examples():
    assert seq(it.offset_iter(I((1, 3)), 2)) == R((3, 5))
    assert seq(it.offset_iter(I((1, 3)), 0)) == R((1, 3))
    assert seq(it.offset_iter(I((-1, 0), (2, 2)), -3)) == R((-4, -3), (-1, -1))


def test_minus_examples():
    assert seq(it.minus_iter(I((1, 2), (4, 4)))) == R((-4, -4), (-2, -1))
    assert seq(it.minus_iter(I((0, 0)))) == R((0, 0))
    assert seq(it.minus_iter(I((-3, -1)))) == R((1, 3))


def test_scale_examples():
    assert seq(it.scale_up(I((1, 3)), 2)) == R((2, 2), (4, 4), (6, 6))
    assert seq(it.scale_up(I((1, 3)), 1)) == R((1, 3))
    assert seq(it.scale_up(I((-2, -1), (3, 3)), 3)) == R((-6, -6), (-3, -3), (9, 9))
    assert seq(it.scale_down(I((3, 9)), 2)) == R((2, 4))
    assert seq(it.scale_down(I((3, 3)), 2)) == R()
    assert seq(it.scale_down(I((2, 3), (5, 6)), 2)) == R((1, 1), (3, 3))
    with pytest.raises(ValueError):
        it.scale_up(I((1, 1)), 0)
    with pytest.raises(ValueError):
        it.scale_down(I((1, 1)), -1)


def test_cache_examples():
    c = it.cache(I((1, 2)))
    assert seq(c) == R((1, 2))
    c.reset()
    assert seq(c) == R((1, 2))
    assert seq(it.cache(I())) == R()
    assert seq(it.cache(it.minus_iter(I((1, 2), (4, 4))))) == R((-4, -4), (-2, -1))


def test_protocol_by_hand():
    r = it.union_(I((1, 1)), I((3, 4)))
    got = []
    while not r.done():
        got.append((r.min(), r.max()))
        r.next()
    assert got == [(1, 1), (3, 4)]


def test_to_seq_rejects_non_canonical_emission():
    with pytest.raises(AssertionError):
        it.to_seq(it.SeqIter([(1, 2), (3, 4)]))


@given(seqs, seqs)
def test_binary_combinators_match_sets(a, b):
    assert not laws.binary_violations(a, b)


@given(seqs)
def test_unary_laws(a):
    assert not laws.unary_violations(a, (-12, 12), scales=(1, 2, 3, 5))


@given(seqs, seqs, seqs)
def test_lattice_laws(a, b, c):
    A, B, C = (x.to_set() for x in (a, b, c))
    nested = seq(it.inter(it.union_(it.SeqIter(a), it.SeqIter(b)), it.SeqIter(c)))
    assert nested.to_set() == (A | B) & C
    assert seq(it.diff(it.SeqIter(a), it.diff(it.SeqIter(a), it.SeqIter(b)))).to_set() == A & B


def test_small_universe_exhaustive():
    n, bad = laws.exhaustive_pairs(-2, 2)
    assert n == 32 * 32 and not bad
