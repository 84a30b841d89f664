"""Values, ranges, range sequences, assignments and extensional constraints.

Everything here is an immutable value type.  Integer values live in a
64-bit signed range; arithmetic that leaves it raises ``ValOverflowError``
instead of silently growing (views map values into a transformed universe
and must stay injective).
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

VAL_MIN = -(2**63)
VAL_MAX = 2**63 - 1


class ValOverflowError(ArithmeticError):
    """A value computation left the representable range."""


def check_val(v: int) -> int:
    if v < VAL_MIN or v > VAL_MAX:
        raise ValOverflowError(f"value {v} outside [{VAL_MIN}, {VAL_MAX}]")
    return v


def add(a: int, b: int) -> int:
    return check_val(a + b)


def sub(a: int, b: int) -> int:
    return check_val(a - b)


def neg(a: int) -> int:
    return check_val(-a)


def mul(a: int, b: int) -> int:
    return check_val(a * b)


def div_ceil(a: int, b: int) -> int:
    """Exact ceiling of a / b for b > 0 (correct for negative a)."""
    return -((-a) // b)


def div_floor(a: int, b: int) -> int:
    return a // b


class Range(NamedTuple):
    lo: int
    hi: int

    def __contains__(self, v: object) -> bool:  # type: ignore[override]
        return isinstance(v, int) and self.lo <= v <= self.hi

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1


class RangeSeq:
    """Canonical range sequence: ordered, disjoint, non-adjacent, non-empty ranges.

    Instances are immutable.  Build them with :func:`normalize` or
    :meth:`from_values`; the constructor trusts its input unless
    ``check=True``.
    """

    __slots__ = ("ranges", "_hash")

    def __init__(self, ranges: Iterable[tuple[int, int]] = (), *, check: bool = False):
        rs = tuple(Range(lo, hi) for lo, hi in ranges)
        if check:
            for r in rs:
                if r.lo > r.hi:
                    raise ValueError(f"empty range {r} in range sequence")
            for a, b in zip(rs, rs[1:]):
                if not a.hi + 1 < b.lo:
                    raise ValueError(f"ranges {a} and {b} are not canonical")
        self.ranges: tuple[Range, ...] = rs
        self._hash: int | None = None

    @classmethod
    def from_values(cls, values: Iterable[int]) -> RangeSeq:
        return normalize((v, v) for v in values)

    @classmethod
    def interval(cls, lo: int, hi: int) -> RangeSeq:
        return cls(((lo, hi),)) if lo <= hi else EMPTY

    def __iter__(self) -> Iterator[Range]:
        return iter(self.ranges)

    def __bool__(self) -> bool:
        return bool(self.ranges)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RangeSeq):
            return self.ranges == other.ranges
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.ranges)
        return self._hash

    def __repr__(self) -> str:
        inner = ",".join(f"[{r.lo},{r.hi}]" for r in self.ranges)
        return f"<{inner}>"

    def __contains__(self, v: object) -> bool:
        if not isinstance(v, int) or not self.ranges:
            return False
        i = bisect.bisect_right(self.ranges, (v, VAL_MAX + 1)) - 1
        return i >= 0 and self.ranges[i].lo <= v <= self.ranges[i].hi

    @property
    def min(self) -> int:
        return self.ranges[0].lo

    @property
    def max(self) -> int:
        return self.ranges[-1].hi

    def values(self) -> Iterator[int]:
        for lo, hi in self.ranges:
            yield from range(lo, hi + 1)

    def to_set(self) -> frozenset[int]:
        return frozenset(self.values())

    def issubset(self, other: RangeSeq) -> bool:
        j = 0
        o = other.ranges
        for lo, hi in self.ranges:
            while j < len(o) and o[j].hi < lo:
                j += 1
            if j == len(o) or not (o[j].lo <= lo and hi <= o[j].hi):
                return False
        return True


EMPTY = RangeSeq()


def normalize(raw: Iterable[tuple[int, int]]) -> RangeSeq:
    """Canonicalize an arbitrary collection of ranges.

    Input ranges may be unordered, overlapping, adjacent or empty (lo > hi);
    empty ones are dropped.
    """
    rs = sorted((check_val(lo), check_val(hi)) for lo, hi in raw if lo <= hi)
    out: list[list[int]] = []
    for lo, hi in rs:
        if out and lo <= out[-1][1] + 1:
            if hi > out[-1][1]:
                out[-1][1] = hi
        else:
            out.append([lo, hi])
    return RangeSeq(out)


def hull(s: RangeSeq) -> RangeSeq:
    if not s:
        return EMPTY
    return RangeSeq(((s.min, s.max),))


def seq_cardinality(s: RangeSeq) -> int:
    return sum(hi - lo + 1 for lo, hi in s.ranges)


# -- assignments and extensional constraints -------------------------------

Assignment = Mapping[int, object]
"""VarId -> value (an int, or a frozenset of ints for set variables)."""


@dataclass(frozen=True)
class ExtensionalConstraint:
    """An explicit, finite set of tuples over an ordered scope of variables."""

    scope: tuple[int, ...]
    tuples: frozenset[tuple] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "scope", tuple(self.scope))
        ts = frozenset(tuple(t) for t in self.tuples)
        for t in ts:
            if len(t) != len(self.scope):
                raise ValueError(f"tuple {t} not total on scope {self.scope}")
        object.__setattr__(self, "tuples", ts)

    @classmethod
    def from_predicate(cls, scope: Sequence[int], universes: Sequence[Iterable], pred) -> ExtensionalConstraint:
        """All tuples of the product of ``universes`` accepted by ``pred(*values)``."""
        return cls(tuple(scope), frozenset(t for t in itertools.product(*universes) if pred(*t)))

    @classmethod
    def from_assignments(cls, scope: Sequence[int], assignments: Iterable[Assignment]) -> ExtensionalConstraint:
        return cls(tuple(scope), frozenset(tuple(a[x] for x in scope) for a in assignments))

    def assignments(self) -> Iterator[dict[int, object]]:
        for t in sorted(self.tuples, key=repr):
            yield dict(zip(self.scope, t))

    def __contains__(self, a: object) -> bool:
        if isinstance(a, Mapping):
            return tuple(a[x] for x in self.scope) in self.tuples
        return tuple(a) in self.tuples  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.tuples)

    def intersect(self, other: ExtensionalConstraint) -> ExtensionalConstraint:
        if other.scope != self.scope:
            raise ValueError("scopes differ")
        return ExtensionalConstraint(self.scope, self.tuples & other.tuples)


# -- domains ---------------------------------------------------------------


class BoolDom(NamedTuple):
    """Boolean variable domain as the set of still possible values."""

    can0: bool
    can1: bool

    def values(self) -> frozenset[int]:
        return frozenset(v for v, ok in ((0, self.can0), (1, self.can1)) if ok)


class SetDom(NamedTuple):
    glb: RangeSeq
    lub: RangeSeq


class DomainMap:
    """Snapshot of every variable domain of a space.

    Any failed map compares equal to every other failed map, whatever the
    stale per-variable contents.
    """

    __slots__ = ("doms", "failed")

    def __init__(self, doms: Mapping[int, object], failed: bool = False):
        self.doms = dict(doms)
        self.failed = failed or any(_is_empty(d) for d in self.doms.values())

    def __getitem__(self, x: int):
        return self.doms[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DomainMap):
            return NotImplemented
        if self.failed or other.failed:
            return self.failed and other.failed
        return self.doms == other.doms

    def __repr__(self) -> str:
        if self.failed:
            return "DomainMap(failed)"
        return f"DomainMap({self.doms!r})"


def _is_empty(d: object) -> bool:
    if isinstance(d, RangeSeq):
        return not d
    if isinstance(d, BoolDom):
        return not (d.can0 or d.can1)
    if isinstance(d, SetDom):
        return not d.glb.issubset(d.lub)
    return False
