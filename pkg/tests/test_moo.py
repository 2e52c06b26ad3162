import math
import warnings

import numpy as np
import pytest

from h2supply.model import assemble, objective_values
from h2supply.moo import (
    ParetoPoint, SweepError, dominates, eps_grid, epsilon_sweep, jobs_from_env, mtopsis_rank, pareto_filter,
    payoff_table,
)
from h2supply.solver import solve_milp

from reference import pairwise_nondominated


def test_filter_examples():
    assert pareto_filter([(1, 1, 1), (2, 2, 2)]) == [(1, 1, 1)]
    assert pareto_filter([(3, 2, 1), (1, 2, 3)]) == [(1, 2, 3), (3, 2, 1)]
    assert pareto_filter([(1, 2, 3), (1, 2, 3)]) == [(1, 2, 3)]
    assert pareto_filter([]) == []


def test_filter_matches_pairwise_check():
    rng = np.random.default_rng(0)
    for _ in range(5):
        pts = [tuple(p) for p in rng.integers(0, 8, (200, 3)).astype(float)]
        assert sorted(pareto_filter(pts)) == pairwise_nondominated(pts)


def test_filter_coalesces_round_off():
    a = ParetoPoint(10.0, 1.0, 5.275, 3.0)
    b = ParetoPoint(10.0, 1.0, 5.27499999999997, 3.0)
    assert len(pareto_filter([a, b], digits=9)) == 1
    assert dominates(b, a) and not dominates(a, b)


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        ParetoPoint(math.nan, 1.0, 1.0, 1.0)


def test_single_alternative():
    r = mtopsis_rank([[3.0, 2.0, 1.0]])
    assert r.rank.tolist() == [1] and r.score.tolist() == [0.0]


def test_constant_column_warns():
    with pytest.warns(UserWarning, match="constant"):
        r = mtopsis_rank([[1.0, 5.0], [2.0, 5.0]])
    assert np.all(r.normalized[:, 1] == 0.0)
    assert r.best == 0


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        mtopsis_rank([[1.0, 2.0]], [1.0, 0.0])
    with pytest.raises(ValueError):
        mtopsis_rank([[1.0, 2.0]], [1.0])


def test_doubling_ghg_weight_helps_ghg_alternative():
    anchors = np.array([[61.4, 22.0, 51.6], [84.8, 16.6, 263.9], [76.9, 21.3, 49.1]])
    equal, doubled = mtopsis_rank(anchors), mtopsis_rank(anchors, [1, 2, 1])
    assert equal.best == 0
    assert doubled.rank[1] <= equal.rank[1]


def test_classic_flag_ranks_by_closeness():
    X = np.array([[1.0, 4.0], [2.0, 2.0], [4.0, 1.0]])
    r = mtopsis_rank(X, classic=True)
    closeness = r.d_minus / (r.d_plus + r.d_minus)
    ordered = closeness[r.order]
    assert np.all(np.diff(ordered) <= 1e-12)
    assert r.to_dict()["method"] == "topsis"


def test_ties_go_to_lower_cost():
    X = np.array([[2.0, 1.0], [1.0, 2.0]])
    r = mtopsis_rank(X)
    assert r.score[0] == pytest.approx(r.score[1])
    assert r.best == 1


def test_eps_grid_spans_payoff_range():
    table = {"cost": {"ghg": 3.0}, "ghg": {"ghg": 1.0}, "risk": {"ghg": 2.0}}
    assert eps_grid(table, "ghg", 3) == [1.0, 2.0, 3.0]
    assert eps_grid(table, "ghg", 1) == [math.inf]
    with pytest.raises(ValueError):
        eps_grid(table, "ghg", 0)


def test_single_cell_sweep_is_cost_optimum(tiny):
    front = epsilon_sweep(tiny, 1, 1)
    best = solve_milp(assemble(tiny, "cost"))
    assert len(front) == 1
    assert front.points[0].cost == pytest.approx(best.objective, rel=1e-6)


def test_tighter_ghg_cannot_lower_cost(tiny):
    base = solve_milp(assemble(tiny, "cost"))
    ghg = objective_values(assemble(tiny, "cost"), base.x)["ghg"]
    tight = solve_milp(assemble(tiny, "cost", {"ghg": 0.9 * ghg}))
    assert tight.status in ("optimal", "infeasible")
    if tight.status == "optimal":
        assert tight.objective >= base.objective - 1e-9


def test_small_sweep_properties(tiny):
    front = epsilon_sweep(tiny, 3, 3)
    crit = [p.criteria for p in front.points]
    assert sorted(crit) == pairwise_nondominated(crit)
    table, _ = payoff_table(tiny)
    assert set(table) == {"cost", "ghg", "risk"}
    for p in front.points:
        vals = objective_values(assemble(tiny, "cost", {"ghg": p.eps_ghg, "risk": p.eps_risk}), p.x)
        assert vals["ghg"] <= p.eps_ghg + 1e-6 and vals["risk"] <= p.eps_risk + 1e-6
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        r = mtopsis_rank(front.matrix())
    assert sorted(r.rank.tolist()) == list(range(1, len(front) + 1))


def test_jobs_from_env(monkeypatch):
    monkeypatch.setenv("H2SUPPLY_JOBS", "3")
    assert jobs_from_env() == 3
    monkeypatch.setenv("H2SUPPLY_JOBS", "many")
    with pytest.raises(SweepError):
        jobs_from_env()
    monkeypatch.delenv("H2SUPPLY_JOBS")
    assert jobs_from_env() == 1
