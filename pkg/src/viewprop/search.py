"""Depth-first search and branch-and-bound over copied spaces."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from . import iterators as it
from .engine import Space, SpaceStatus
from .kernel import seq_cardinality

FIRST_UNASSIGNED, MIN_SIZE = "first_unassigned", "min_size"
MIN_VALUE = "min_value"


@dataclass
class RunStats:
    solutions: int = 0
    failures: int = 0
    propagations: int = 0
    nodes: int = 0
    wall_time: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _size(x) -> int:
    if hasattr(x, "getlub"):
        return seq_cardinality(it.to_seq(x.getlub())) - seq_cardinality(it.to_seq(x.getglb()))
    if hasattr(x, "getdom"):
        return x.size()
    return 2 if not x.is_assigned() else 1


def _assigned(x) -> bool:
    return x.assigned() if hasattr(x, "assigned") else x.is_assigned()


@dataclass(frozen=True)
class BranchSpec:
    """Variable and value selection for binary branching.

    Integers branch x = v | x != v, Booleans x = v | x = 1 - v, sets
    v in s | v not in s, where v is the smallest candidate value.
    """

    var_select: str = FIRST_UNASSIGNED
    val_select: str = MIN_VALUE

    def __post_init__(self):
        if self.var_select not in (FIRST_UNASSIGNED, MIN_SIZE):
            raise ValueError(f"unknown variable selection {self.var_select!r}")
        if self.val_select != MIN_VALUE:
            raise ValueError(f"unknown value selection {self.val_select!r}")

    def choose(self, space: Space, idxs: Sequence[int]) -> int | None:
        best, best_size = None, None
        for i in idxs:
            x = space.vars[i]
            if _assigned(x):
                continue
            if self.var_select == FIRST_UNASSIGNED:
                return i
            s = _size(x)
            if best is None or s < best_size:
                best, best_size = i, s
        return best

    def alternatives(self, space: Space, idx: int) -> tuple[Callable, Callable]:
        x = space.vars[idx]
        if hasattr(x, "getlub"):
            v = it.to_seq(it.Diff(x.getlub(), x.getglb())).min
            return (lambda s: s.vars[idx].include(v)), (lambda s: s.vars[idx].exclude(v))
        if hasattr(x, "getdom"):
            v = x.min()
            return (lambda s: s.vars[idx].eq(v)), (lambda s: s.vars[idx].nq(v))
        return (lambda s: s.vars[idx].zero()), (lambda s: s.vars[idx].one())


def _explore(root: Space, branch: BranchSpec, idxs: Sequence[int], on_solution, before=None) -> RunStats:
    stats = RunStats()
    start = time.perf_counter()
    root = root.copy()
    root.propagations = 0
    stack = [root]
    while stack:
        s = stack.pop()
        stats.nodes += 1
        if before is not None:
            before(s)
        st = s.fixpoint()
        stats.propagations += s.propagations
        if st is SpaceStatus.FAILED:
            stats.failures += 1
            continue
        i = branch.choose(s, idxs)
        if i is None:
            stats.solutions += 1
            if on_solution(s) is False:
                break
            continue
        left, right = branch.alternatives(s, i)
        kids = []
        for alt in (left, right):
            c = s.copy()
            c.propagations = 0
            alt(c)
            kids.append(c)
        stack.append(kids[1])
        stack.append(kids[0])
    stats.wall_time = time.perf_counter() - start
    return stats


def dfs(space: Space, branch: BranchSpec, idxs: Sequence[int], limit: int | None = None):
    """Enumerate solutions depth-first (left branch first), up to ``limit``."""
    sols: list[Space] = []

    def keep(s):
        sols.append(s)
        return limit is None or len(sols) < limit

    stats = _explore(space, branch, idxs, keep)
    return sols, stats


def branch_and_bound(space: Space, branch: BranchSpec, idxs: Sequence[int], objective: int):
    """Minimize variable ``objective``; each solution tightens later nodes strictly."""
    best: list[Space] = []

    def keep(s):
        best.append(s)

    def bound(s):
        if best:
            s.vars[objective].adjmax(best[-1].vars[objective].val() - 1)

    stats = _explore(space, branch, idxs, keep, before=bound)
    return (best[-1] if best else None), stats


__all__ = ["BranchSpec", "FIRST_UNASSIGNED", "MIN_SIZE", "MIN_VALUE", "RunStats", "branch_and_bound", "dfs"]
