"""Benchmark models posted through views or through decompositions.

Every model is built by :func:`build` for a size and a mode.  In ``views``
mode derived propagators are posted by applying views; in ``decomposed``
mode the same derived propagators are posted as auxiliary variables,
channelling propagators and the core.  Both modes branch on the same
variables in the same order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import iterators as it
from .engine import Space
from .oracle.decomposition import DecomposingPoster
from .propagators import catalog as C
from .search import MIN_SIZE, BranchSpec, RunStats, branch_and_bound, dfs

MODES = ("views", "decomposed")


@dataclass
class Model:
    name: str
    size: int
    mode: str
    space: Space
    branch_vars: list[int]
    branch: BranchSpec
    decode: Callable[[Space], tuple]
    check: Callable[[tuple], bool]
    objective: int | None = None


class ModelError(ValueError):
    """Unknown model name, bad size or bad mode."""


def _poster(space: Space, mode: str):
    if mode == "views":
        return C.ViewPoster(space)
    if mode == "decomposed":
        return DecomposingPoster(space)
    raise ModelError(f"unknown mode {mode!r}")


def _ints(space, xs) -> tuple:
    return tuple(space.vars[x.idx].val() for x in xs)


# -- n-queens -------------------------------------------------------------------


def queens(n: int, mode: str = "views", checked: bool = False) -> Model:
    if n < 1:
        raise ModelError("queens needs a positive size")
    sp = Space(checked=checked)
    post = _poster(sp, mode)
    q = [sp.int_var(0, n - 1) for _ in range(n)]
    C.alldiff(post, q)
    C.alldiff(post, q, [i for i in range(n)])
    C.alldiff(post, q, [-i for i in range(n)])
    return Model("queens", n, mode, sp, [x.idx for x in q], BranchSpec(),
                 lambda s: _ints(s, q), queens_ok)


def queens_ok(sol: tuple) -> bool:
    n = len(sol)
    return all(
        sol[i] != sol[j] and abs(sol[i] - sol[j]) != j - i
        for i in range(n) for j in range(i + 1, n)
    )


def queens_count(n: int) -> int:
    """Brute force over permutations."""
    return sum(1 for p in itertools.permutations(range(n)) if queens_ok(p))


# -- alpha ------------------------------------------------------------------------

ALPHA_FULL = {
    "BALLET": 45, "CELLO": 43, "CONCERT": 74, "FLUTE": 30, "FUGUE": 50,
    "GLEE": 66, "JAZZ": 58, "LYRE": 47, "OBOE": 53, "OPERA": 65,
    "POLKA": 59, "QUARTET": 50, "SAXOPHONE": 134, "SCALE": 51, "SOLO": 37,
    "SONG": 61, "SOPRANO": 82, "THEME": 72, "VIOLIN": 100, "WALTZ": 34,
}
# ten letters, five words, one solution
ALPHA_REDUCED = {"FACE": 30, "JADE": 23, "HEDGE": 31, "BEACH": 31, "GIBE": 27}


def _alpha_data(size: int) -> tuple[str, dict]:
    if size == 26:
        return "ABCDEFGHIJKLMNOPQRSTUVWXYZ", ALPHA_FULL
    if size == 10:
        return "ABCDEFGHIJ", ALPHA_REDUCED
    raise ModelError("alpha has sizes 10 (reduced) and 26 (full)")


def alpha(size: int = 10, mode: str = "views", checked: bool = False) -> Model:
    letters, words = _alpha_data(size)
    sp = Space(checked=checked)
    post = _poster(sp, mode)
    x = {c: sp.int_var(1, size) for c in letters}
    for w, total in words.items():
        counts = {c: w.count(c) for c in sorted(set(w))}
        C.linear(post, list(counts.values()), [x[c] for c in counts], "=", total)
    xs = [x[c] for c in letters]
    C.alldiff(post, xs, bounds=True)
    return Model("alpha", size, mode, sp, [v.idx for v in xs], BranchSpec(MIN_SIZE),
                 lambda s: _ints(s, xs), lambda sol: alpha_ok(size, sol))


def alpha_ok(size: int, sol: tuple) -> bool:
    letters, words = _alpha_data(size)
    a = dict(zip(letters, sol))
    return sorted(sol) == list(range(1, size + 1)) and all(
        sum(a[c] for c in w) == t for w, t in words.items()
    )


def alpha_solutions(size: int = 10) -> list[tuple]:
    """Independent backtracking over permutations, checking completed words."""
    letters, words = _alpha_data(size)
    order = {c: i for i, c in enumerate(letters)}
    done_at = {}
    for w, t in words.items():
        done_at.setdefault(max(order[c] for c in w), []).append((w, t))
    out = []

    def go(i, used, a):
        if i == len(letters):
            out.append(tuple(a[c] for c in letters))
            return
        for v in range(1, size + 1):
            if v in used:
                continue
            a[letters[i]] = v
            if all(sum(a[c] for c in w) == t for w, t in done_at.get(i, ())):
                used.add(v)
                go(i + 1, used, a)
                used.discard(v)
        a.pop(letters[i], None)

    go(0, set(), {})
    return out


# -- Golomb rulers ------------------------------------------------------------------


def golomb(n: int, mode: str = "views", checked: bool = False) -> Model:
    if n < 2:
        raise ModelError("golomb needs at least two marks")
    sp = Space(checked=checked)
    post = _poster(sp, mode)
    ub = n * n
    m = [sp.int_var(0, 0)] + [sp.int_var(1, ub) for _ in range(n - 1)]
    diffs = {}
    for i in range(n):
        for j in range(i + 1, n):
            k = j - i
            d = sp.int_var(k * (k + 1) // 2, ub)
            diffs[i, j] = d
            # m_j - m_i - d = 0, the minus signs come from minus views
            C.linear(post, [1, -1, -1], [m[j], m[i], d], "=", 0)
    for i in range(n - 1):
        C.linear(post, [1, -1], [m[i], m[i + 1]], "<=", -1)
    if n > 2:
        C.linear(post, [1, -1], [diffs[0, 1], diffs[n - 2, n - 1]], "<=", -1)
    C.alldiff(post, list(diffs.values()), bounds=True)
    return Model("golomb", n, mode, sp, [x.idx for x in m], BranchSpec(),
                 lambda s: _ints(s, m), golomb_ok, objective=m[-1].idx)


def golomb_ok(sol: tuple) -> bool:
    ds = [b - a for a, b in itertools.combinations(sol, 2)]
    return sol[0] == 0 and list(sol) == sorted(set(sol)) and len(set(ds)) == len(ds)


def golomb_optimum(n: int) -> int:
    """Shortest ruler with n marks by iterative deepening on its length."""

    def fits(length):
        marks, used = [0], set()

        def go():
            if len(marks) == n:
                return marks[-1] == length
            left = n - len(marks)
            for v in range(marks[-1] + 1, length + 1):
                if length - v < left - 1:
                    break
                new = [v - a for a in marks]
                if any(d in used for d in new):
                    continue
                if len(marks) + 1 == n and v != length:
                    continue
                used.update(new)
                marks.append(v)
                if go():
                    return True
                marks.pop()
                used.difference_update(new)
            return False

        return go()

    length = n - 1
    while not fits(length):
        length += 1
    return length


# -- balanced incomplete block designs -----------------------------------------------

BIBD_PARAMS = {6: (6, 10, 5, 3, 2), 7: (7, 7, 3, 3, 1), 8: (8, 14, 7, 4, 3), 9: (9, 12, 4, 3, 1)}


def bibd(v: int = 7, mode: str = "views", checked: bool = False) -> Model:
    if v not in BIBD_PARAMS:
        raise ModelError(f"bibd sizes are {sorted(BIBD_PARAMS)}")
    v, b, r, k, lam = BIBD_PARAMS[v]
    sp = Space(checked=checked)
    post = _poster(sp, mode)
    x = [[sp.bool_var() for _ in range(b)] for _ in range(v)]
    for row in x:
        C.card_eq(post, row, r)
    for j in range(b):
        C.card_eq(post, [x[i][j] for i in range(v)], k)
    for i1 in range(v):
        for i2 in range(i1 + 1, v):
            both = []
            for j in range(b):
                z = sp.bool_var()
                C.bool_and(post, [x[i1][j], x[i2][j]], z)
                both.append(z)
            C.card_eq(post, both, lam)
    flat = [c for row in x for c in row]

    def decode(s):
        return tuple(tuple(s.vars[c.idx].value() for c in row) for row in x)

    return Model("bibd", v, mode, sp, [c.idx for c in flat], BranchSpec(), decode,
                 lambda sol: bibd_ok(BIBD_PARAMS[v], sol))


def bibd_ok(params, sol) -> bool:
    v, b, r, k, lam = params
    if len(sol) != v or any(len(row) != b for row in sol):
        return False
    rows = all(sum(row) == r for row in sol)
    cols = all(sum(sol[i][j] for i in range(v)) == k for j in range(b))
    pairs = all(
        sum(a & c for a, c in zip(sol[i1], sol[i2])) == lam
        for i1 in range(v) for i2 in range(i1 + 1, v)
    )
    return rows and cols and pairs


# -- Steiner triple systems ---------------------------------------------------------


def _steiner_shape(n: int) -> tuple[int, int]:
    if n < 7 or n % 6 not in (1, 3):
        raise ModelError("steiner needs n >= 7 with n mod 6 in {1, 3}")
    return n * (n - 1) // 6, (n - 1) // 2


def steiner_fixed(n: int) -> list[tuple[int, int]]:
    """Symmetry breaking as (set index, element) memberships, plus s0 = {1,2,3}.

    The first r sets are the blocks through 1 and the block after s0 contains
    4.  Later blocks through 2 and 3 are placed next.
    """
    b, r = _steiner_shape(n)
    req = [(i, 1) for i in range(r)] + [(1, 4)]
    nxt = r
    for e in (2, 3):
        for _ in range(r - 1):
            if nxt < b:
                req.append((nxt, e))
                nxt += 1
    return req


def steiner(n: int = 7, mode: str = "views", checked: bool = False) -> Model:
    b, r = _steiner_shape(n)
    sp = Space(checked=checked)
    post = _poster(sp, mode)
    s = [sp.set_var((), range(1, n + 1)) for _ in range(b)]
    for x in s:
        C.set_card(post, x, 3, 3)
    for x in (1, 2, 3):
        s[0].include(x)
    for i, e in steiner_fixed(n):
        s[i].include(e)
    for i in range(b):
        for j in range(b):
            if i != j:
                # |s_i - s_j| >= 2 says the triples share at most one element
                t = sp.set_var((), range(1, n + 1))
                C.set_diff(post, s[i], s[j], t, (1, n))
                C.set_card(post, t, 2, 3)

    def decode(space):
        return tuple(frozenset(v for lo, hi in space.vars[x.idx].getglb() for v in range(lo, hi + 1)) for x in s)

    return Model("steiner", n, mode, sp, [x.idx for x in s], BranchSpec(), decode,
                 lambda sol: steiner_ok(n, sol))


def steiner_ok(n: int, sol) -> bool:
    b, _ = _steiner_shape(n)
    if len(sol) != b or any(len(t) != 3 or not t <= set(range(1, n + 1)) for t in sol):
        return False
    if sol[0] != {1, 2, 3} or any(e not in sol[i] for i, e in steiner_fixed(n)):
        return False
    return all(len(sol[i] & sol[j]) <= 1 for i in range(b) for j in range(i + 1, b))


def steiner_solutions(n: int = 7) -> list[tuple]:
    """Enumerate sequences of explicit triples meeting the same conditions."""
    b, _ = _steiner_shape(n)
    triples = [frozenset(t) for t in itertools.combinations(range(1, n + 1), 3)]
    need: dict[int, set] = {}
    for i, e in steiner_fixed(n):
        need.setdefault(i, set()).add(e)
    need.setdefault(0, set()).update({1, 2, 3})
    out = []

    def go(seq):
        i = len(seq)
        if i == b:
            out.append(tuple(seq))
            return
        for t in triples:
            if need.get(i, set()) <= t and all(len(t & u) <= 1 for u in seq):
                seq.append(t)
                go(seq)
                seq.pop()

    go([])
    return out


# -- registry -------------------------------------------------------------------------

BUILDERS = {"queens": queens, "alpha": alpha, "golomb": golomb, "bibd": bibd, "steiner": steiner}
DEFAULT_SIZE = {"queens": 8, "alpha": 10, "golomb": 6, "bibd": 7, "steiner": 7}


def build(name: str, size: int | None = None, mode: str = "views", checked: bool = False) -> Model:
    if name not in BUILDERS:
        raise ModelError(f"unknown model {name!r}; choose from {', '.join(BUILDERS)}")
    if mode not in MODES:
        raise ModelError(f"unknown mode {mode!r}")
    return BUILDERS[name](DEFAULT_SIZE[name] if size is None else size, mode, checked=checked)


def solve(model: Model, search: str = "all") -> tuple[list[tuple], RunStats]:
    """Run ``all``, ``first`` or ``optimize`` search; returns decoded solutions."""
    if search == "optimize":
        if model.objective is None:
            raise ModelError(f"{model.name} has no objective")
        best, stats = branch_and_bound(model.space, model.branch, model.branch_vars, model.objective)
        return ([model.decode(best)] if best is not None else []), stats
    if search not in ("all", "first"):
        raise ModelError(f"unknown search {search!r}")
    sols, stats = dfs(model.space, model.branch, model.branch_vars, 1 if search == "first" else None)
    return [model.decode(s) for s in sols], stats


def run_model(name: str, size: int | None = None, mode: str = "views", search: str = "all",
              checked: bool = False) -> tuple[list[tuple], RunStats]:
    return solve(build(name, size, mode, checked), search)


def objective_value(model: Model, sol: tuple) -> int | None:
    if model.name == "golomb":
        return sol[-1]
    return None


__all__ = [
    "BUILDERS",
    "MODES",
    "Model",
    "ModelError",
    "alpha_solutions",
    "build",
    "golomb_optimum",
    "queens_count",
    "run_model",
    "solve",
    "steiner_solutions",
]
