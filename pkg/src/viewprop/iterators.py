"""Range iterators and their combinators.

A range iterator walks a range sequence one range at a time through
``done()``, ``next()``, ``min()`` and ``max()``.  Every combinator below is
itself a range iterator and emits a canonical sequence (increasing,
non-adjacent ranges).  Combinators are lazy; only :class:`Minus` buffers its
input, since it has to reverse direction.

Iterators are consumed by iteration.  :class:`SeqIter` and :class:`Cache`
support ``reset()``.

Python iteration (``for lo, hi in it``) is provided for convenience and
drives the same protocol.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .kernel import EMPTY, Range, RangeSeq, add, check_val, div_ceil, div_floor, mul, neg


class RangeIter:
    """Base class of the range iterator protocol."""

    def done(self) -> bool:
        raise NotImplementedError

    def next(self) -> None:
        raise NotImplementedError

    def min(self) -> int:
        raise NotImplementedError

    def max(self) -> int:
        raise NotImplementedError

    def __iter__(self) -> Iterator[Range]:
        while not self.done():
            yield Range(self.min(), self.max())
            self.next()


class SeqIter(RangeIter):
    """Iterate a stored sequence of ranges by position."""

    __slots__ = ("_rs", "_i")

    def __init__(self, ranges: RangeSeq | Iterable[tuple[int, int]] = EMPTY):
        self._rs = ranges.ranges if isinstance(ranges, RangeSeq) else tuple(Range(*r) for r in ranges)
        self._i = 0

    def done(self) -> bool:
        return self._i >= len(self._rs)

    def next(self) -> None:
        self._i += 1

    def min(self) -> int:
        return self._rs[self._i][0]

    def max(self) -> int:
        return self._rs[self._i][1]

    def reset(self) -> None:
        self._i = 0


def singleton(lo: int, hi: int | None = None) -> SeqIter:
    hi = lo if hi is None else hi
    return SeqIter(((lo, hi),) if lo <= hi else ())


def empty() -> SeqIter:
    return SeqIter(())


class _Buffered(RangeIter):
    """Helper for lazy combinators that compute one output range ahead."""

    _lo: int
    _hi: int
    _done: bool

    def done(self) -> bool:
        return self._done

    def min(self) -> int:
        return self._lo

    def max(self) -> int:
        return self._hi

    def next(self) -> None:
        self._advance()

    def _advance(self) -> None:
        raise NotImplementedError


class Inter(_Buffered):
    """set(out) = set(r1) & set(r2)."""

    def __init__(self, r1: RangeIter, r2: RangeIter):
        self.r1, self.r2 = r1, r2
        self._advance()

    def _advance(self) -> None:
        r1, r2 = self.r1, self.r2
        while not r1.done() and not r2.done():
            if r1.max() < r2.min():
                r1.next()
            elif r2.max() < r1.min():
                r2.next()
            else:
                self._lo = max(r1.min(), r2.min())
                self._hi = min(r1.max(), r2.max())
                if r1.max() < r2.max():
                    r1.next()
                else:
                    r2.next()
                self._done = False
                return
        self._done = True


class Union(_Buffered):
    """set(out) = set(r1) | set(r2)."""

    def __init__(self, r1: RangeIter, r2: RangeIter):
        self.r1, self.r2 = r1, r2
        self._advance()

    def _pick(self) -> RangeIter | None:
        r1, r2 = self.r1, self.r2
        if r1.done():
            return None if r2.done() else r2
        if r2.done():
            return r1
        return r1 if r1.min() <= r2.min() else r2

    def _advance(self) -> None:
        r = self._pick()
        if r is None:
            self._done = True
            return
        lo, hi = r.min(), r.max()
        r.next()
        while True:
            r = self._pick()
            if r is None or r.min() > hi + 1:
                break
            hi = max(hi, r.max())
            r.next()
        self._lo, self._hi, self._done = lo, hi, False


class Diff(_Buffered):
    """set(out) = set(r1) - set(r2)."""

    def __init__(self, r1: RangeIter, r2: RangeIter):
        self.r1, self.r2 = r1, r2
        self._pending: tuple[int, int] | None = None
        self._advance()

    def _advance(self) -> None:
        r1, r2 = self.r1, self.r2
        while True:
            if self._pending is None:
                if r1.done():
                    self._done = True
                    return
                self._pending = (r1.min(), r1.max())
                r1.next()
            lo, hi = self._pending
            while not r2.done() and r2.max() < lo:
                r2.next()
            if r2.done() or r2.min() > hi:
                self._pending = None
                self._lo, self._hi, self._done = lo, hi, False
                return
            # r2's current range overlaps [lo, hi]
            cut_lo, cut_hi = r2.min(), r2.max()
            self._pending = (cut_hi + 1, hi) if cut_hi < hi else None
            if cut_lo > lo:
                self._lo, self._hi, self._done = lo, cut_lo - 1, False
                return


class Compl(_Buffered):
    """set(out) = universe - set(r); requires set(r) within ``universe``."""

    def __init__(self, r: RangeIter, universe: tuple[int, int]):
        self.r = r
        self._next_lo = universe[0]
        self._end = universe[1]
        self._advance()

    def _advance(self) -> None:
        r = self.r
        while not r.done() and r.max() < self._next_lo:
            r.next()
        while True:
            if self._next_lo > self._end:
                self._done = True
                return
            if r.done() or r.min() > self._end:
                self._lo, self._hi = self._next_lo, self._end
                self._next_lo = self._end + 1
                self._done = False
                return
            gap_hi = r.min() - 1
            lo = self._next_lo
            self._next_lo = r.max() + 1
            r.next()
            if gap_hi >= lo:
                self._lo, self._hi = lo, min(gap_hi, self._end)
                self._done = False
                return


class Offset(RangeIter):
    """set(out) = {v + c | v in set(r)}."""

    def __init__(self, r: RangeIter, c: int):
        self.r, self.c = r, c

    def done(self) -> bool:
        return self.r.done()

    def next(self) -> None:
        self.r.next()

    def min(self) -> int:
        return add(self.r.min(), self.c)

    def max(self) -> int:
        return add(self.r.max(), self.c)


class Cache(SeqIter):
    """Consume ``r`` exactly once and replay its ranges on demand."""

    def __init__(self, r: RangeIter):
        super().__init__(tuple(Range(lo, hi) for lo, hi in r))


class Minus(SeqIter):
    """set(out) = {-v | v in set(r)}, emitted in increasing order.

    The input is read into a cache and replayed backwards with signs flipped.
    """

    def __init__(self, r: RangeIter):
        buf = Cache(r)._rs
        super().__init__(tuple(Range(neg(hi), neg(lo)) for lo, hi in reversed(buf)))


class ScaleUp(RangeIter):
    """set(out) = {a*v | v in set(r)} for a >= 1; singletons unless a == 1."""

    def __init__(self, r: RangeIter, a: int):
        if a < 1:
            raise ValueError("scale coefficient must be positive")
        self.r, self.a = r, a
        if a > 1 and not r.done():
            self._cur, self._last = r.min(), r.max()

    def done(self) -> bool:
        return self.r.done()

    def next(self) -> None:
        if self.a == 1:
            self.r.next()
            return
        if self._cur < self._last:
            self._cur += 1
            return
        self.r.next()
        if not self.r.done():
            self._cur, self._last = self.r.min(), self.r.max()

    def min(self) -> int:
        if self.a == 1:
            return self.r.min()
        return mul(self._cur, self.a)

    def max(self) -> int:
        if self.a == 1:
            return self.r.max()
        return mul(self._cur, self.a)


class ScaleDown(_Buffered):
    """set(out) = {v | a*v in set(r)} for a >= 1.

    Each input range [m, n] maps to [ceil(m/a), floor(n/a)]; empty results are
    skipped and overlapping or adjacent ones merged.
    """

    def __init__(self, r: RangeIter, a: int):
        if a < 1:
            raise ValueError("scale coefficient must be positive")
        self.r, self.a = r, a
        self._advance()

    def _scaled(self) -> tuple[int, int]:
        return div_ceil(self.r.min(), self.a), div_floor(self.r.max(), self.a)

    def _advance(self) -> None:
        r = self.r
        while not r.done():
            lo, hi = self._scaled()
            r.next()
            if lo <= hi:
                break
        else:
            self._done = True
            return
        while not r.done():
            nlo, nhi = self._scaled()
            if nlo > nhi:
                r.next()
                continue
            if nlo > hi + 1:
                break
            hi = max(hi, nhi)
            r.next()
        self._lo, self._hi, self._done = lo, hi, False


def to_seq(r: RangeIter | RangeSeq) -> RangeSeq:
    """Collect an iterator into a RangeSeq (checking the emission invariant)."""
    if isinstance(r, RangeSeq):
        return r
    out = []
    prev_hi = None
    for lo, hi in r:
        check_val(lo)
        check_val(hi)
        if lo > hi or (prev_hi is not None and not prev_hi + 1 < lo):
            raise AssertionError(f"iterator emitted non-canonical range [{lo},{hi}] after {prev_hi}")
        out.append((lo, hi))
        prev_hi = hi
    return RangeSeq(out)


# lowercase aliases
inter = Inter
union_ = Union
diff = Diff
compl = Compl
offset_iter = Offset
minus_iter = Minus
scale_up = ScaleUp
scale_down = ScaleDown
cache = Cache
