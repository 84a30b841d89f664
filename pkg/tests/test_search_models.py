import pytest

from viewprop import models
from viewprop.engine import Space
from viewprop.propagators import LinearEq
from viewprop.search import FIRST_UNASSIGNED, MIN_SIZE, BranchSpec, branch_and_bound, dfs


def test_dfs_enumerates_small_problem():
    sp = Space()
    x, y = sp.int_var(0, 3), sp.int_var(0, 3)
    LinearEq(sp, [x, y], 3)
    sols, stats = dfs(sp, BranchSpec(), [x.idx, y.idx])
    assert sorted((s.vars[0].val(), s.vars[1].val()) for s in sols) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert stats.solutions == 4 and stats.failures + stats.solutions <= stats.nodes
    # the root space is not consumed by search
    assert x.snapshot().to_set() == {0, 1, 2, 3}


def test_dfs_limit_and_order():
    sp = Space()
    xs = [sp.int_var(0, 2) for _ in range(2)]
    sols, _ = dfs(sp, BranchSpec(), [x.idx for x in xs], limit=2)
    assert [(s.vars[0].val(), s.vars[1].val()) for s in sols] == [(0, 0), (0, 1)]


def test_failed_root_reports_no_solution():
    sp = Space()
    x = sp.int_var(0, 1)
    LinearEq(sp, [x], 5)
    sols, stats = dfs(sp, BranchSpec(), [x.idx])
    assert sols == [] and stats.failures == 1 and stats.nodes == 1


def test_branch_and_bound_minimizes():
    sp = Space()
    x, y = sp.int_var(0, 5), sp.int_var(0, 5)
    LinearEq(sp, [x, y], 4)
    # y is branched first (smallest value first), so x starts high and must improve
    best, stats = branch_and_bound(sp, BranchSpec(), [y.idx, x.idx], x.idx)
    assert best.vars[x.idx].val() == 0 and best.vars[y.idx].val() == 4
    assert stats.solutions > 1


def test_infeasible_branch_and_bound():
    sp = Space()
    x = sp.int_var(0, 3)
    LinearEq(sp, [x], 7)
    best, _ = branch_and_bound(sp, BranchSpec(), [x.idx], x.idx)
    assert best is None


def test_branch_spec_validation():
    with pytest.raises(ValueError):
        BranchSpec("random")
    with pytest.raises(ValueError):
        BranchSpec(FIRST_UNASSIGNED, "max_value")
    sp = Space()
    a, b = sp.int_var(0, 9), sp.int_var(0, 1)
    assert BranchSpec(MIN_SIZE).choose(sp, [a.idx, b.idx]) == b.idx
    assert BranchSpec().choose(sp, [a.idx, b.idx]) == a.idx


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_queens_matches_permutation_oracle(n):
    sols, _ = models.run_model("queens", n)
    assert len(sols) == len(set(sols)) == models.queens_count(n)
    assert all(models.queens_ok(s) for s in sols)


def test_alpha_reduced_matches_backtracking_oracle():
    sols, _ = models.run_model("alpha", 10)
    assert sorted(sols) == sorted(models.alpha_solutions(10))
    assert sols == [(7, 3, 9, 1, 10, 4, 8, 2, 6, 5)]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_golomb_matches_oracle(n):
    m = models.golomb(n)
    sols, _ = models.solve(m, "optimize")
    assert models.objective_value(m, sols[0]) == models.golomb_optimum(n)
    assert models.golomb_ok(sols[0])


def test_golomb_known_optima():
    assert [models.golomb_optimum(n) for n in (2, 3, 4, 5)] == [1, 3, 6, 11]


def test_steiner_matches_explicit_oracle():
    sols, _ = models.run_model("steiner", 7)
    want = models.steiner_solutions(7)
    assert len(sols) == len(want) == 24
    assert sorted(map(repr, sols)) == sorted(map(repr, want))
    assert all(models.steiner_ok(7, s) for s in sols)


def test_bibd_first_solution_is_valid():
    m = models.bibd(7)
    sols, _ = models.solve(m, "first")
    assert len(sols) == 1 and m.check(sols[0])


def test_determinism():
    a = models.run_model("queens", 6)[1].as_dict()
    b = models.run_model("queens", 6)[1].as_dict()
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


@pytest.mark.parametrize("name, size", [("queens", 5), ("alpha", 10), ("golomb", 5), ("bibd", 6), ("steiner", 7)])
def test_modes_agree(name, size):
    search = "optimize" if name == "golomb" else ("first" if name == "bibd" else "all")
    (sv, tv), (sd, td) = (models.run_model(name, size, m, search) for m in models.MODES)
    assert sv == sd
    assert tv.failures == td.failures


def test_model_errors():
    with pytest.raises(models.ModelError):
        models.build("nosuch")
    with pytest.raises(models.ModelError):
        models.build("queens", 4, "other")
    with pytest.raises(models.ModelError):
        models.build("alpha", 12)
    with pytest.raises(models.ModelError):
        models.solve(models.queens(4), "optimize")


def test_checked_mode_runs_clean():
    sols, _ = models.run_model("queens", 6, checked=True)
    assert len(sols) == 4
