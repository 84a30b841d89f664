"""Explicit-set reference semantics for the range iterator combinators."""

from __future__ import annotations

import itertools

from viewprop import iterators as it
from viewprop.kernel import RangeSeq


def all_seqs(lo: int, hi: int) -> list[RangeSeq]:
    """Every canonical range sequence whose values lie in [lo, hi]."""
    vals = range(lo, hi + 1)
    out = []
    for mask in range(1 << len(vals)):
        out.append(RangeSeq.from_values(v for i, v in enumerate(vals) if mask >> i & 1))
    return out


def S(r) -> frozenset[int]:
    return it.to_seq(r).to_set()


def binary_violations(a: RangeSeq, b: RangeSeq) -> list[str]:
    sa, sb = a.to_set(), b.to_set()
    out = []
    for name, got, want in (
        ("inter", it.Inter(it.SeqIter(a), it.SeqIter(b)), sa & sb),
        ("union", it.Union(it.SeqIter(a), it.SeqIter(b)), sa | sb),
        ("diff", it.Diff(it.SeqIter(a), it.SeqIter(b)), sa - sb),
    ):
        if S(got) != want:
            out.append(f"{name}({a!r}, {b!r})")
    return out


def unary_violations(a: RangeSeq, universe: tuple[int, int], scales=(1, 2, 3)) -> list[str]:
    sa = a.to_set()
    out = []
    u = frozenset(range(universe[0], universe[1] + 1))
    if S(it.Compl(it.SeqIter(a), universe)) != u - sa:
        out.append(f"compl({a!r})")
    for c in (-3, 0, 5):
        if S(it.Offset(it.SeqIter(a), c)) != {v + c for v in sa}:
            out.append(f"offset({a!r}, {c})")
    minus = it.to_seq(it.Minus(it.SeqIter(a)))
    if minus.to_set() != {-v for v in sa}:
        out.append(f"minus({a!r})")
    if it.to_seq(it.Minus(it.SeqIter(minus))) != a:
        out.append(f"minus involution on {a!r}")
    for k in scales:
        up = it.to_seq(it.ScaleUp(it.SeqIter(a), k))
        down = it.to_seq(it.ScaleDown(it.SeqIter(a), k))
        if up.to_set() != {k * v for v in sa}:
            out.append(f"scale_up({a!r}, {k})")
        if down.to_set() != {v for v in range(min(sa, default=0) // k - 1, max(sa, default=0) // k + 2) if k * v in sa}:
            out.append(f"scale_down({a!r}, {k})")
        # Galois section: down after up is the identity, up after down only shrinks
        if it.to_seq(it.ScaleDown(it.SeqIter(up), k)) != a:
            out.append(f"down(up({a!r})) with a={k}")
        if not it.to_seq(it.ScaleUp(it.SeqIter(down), k)).issubset(a):
            out.append(f"up(down({a!r})) with a={k}")
    return out


def exhaustive_pairs(lo: int, hi: int) -> tuple[int, list[str]]:
    seqs = all_seqs(lo, hi)
    bad = []
    n = 0
    for a, b in itertools.product(seqs, repeat=2):
        n += 1
        bad += binary_violations(a, b)
    return n, bad
