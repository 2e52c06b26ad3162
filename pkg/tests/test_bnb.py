import itertools
import math

import numpy as np
import pytest

from h2supply.model import assemble
from h2supply.solver import BnbOptions, enumerate_oracle, solve, solve_milp

from randinst import make_instance, random_milp


def test_knapsack_matches_enumeration():
    values, weights, cap = np.array([6.0, 5.0, 4.0]), np.array([4.0, 3.0, 2.0]), 6.0
    inst = make_instance(-values, [weights], ["L"], [cap], np.zeros(3), np.ones(3), np.ones(3, bool))
    best = min(-values @ np.array(x) for x in itertools.product((0, 1), repeat=3) if weights @ np.array(x) <= cap)
    sol = solve_milp(inst)
    assert sol.status == "optimal"
    assert sol.objective == pytest.approx(best)
    assert np.allclose(sol.x, np.round(sol.x))


@pytest.mark.parametrize("kw", [dict(rel_gap=0), dict(node_limit=0), dict(branching="random"),
                                dict(time_limit=-1)])
def test_options_validation(kw):
    with pytest.raises(ValueError):
        BnbOptions(**kw)


def test_random_milps_match_oracle():
    rng = np.random.default_rng(1)
    statuses = set()
    for _ in range(100):
        inst = random_milp(rng)
        ours, ref = solve_milp(inst), enumerate_oracle(inst)
        assert ours.status == ref.status
        statuses.add(ref.status)
        if ref.status == "optimal":
            assert abs(ours.objective - ref.objective) <= 1e-6 * (1 + abs(ref.objective))
    assert statuses == {"optimal", "infeasible"}


def test_integer_infeasible_instance():
    # 2x = 1 has no integer solution
    inst = make_instance([1.0], [[2.0]], ["E"], [1.0], [0.0], [5.0], np.array([True]))
    assert solve_milp(inst).status == "infeasible"


def test_bound_history_is_monotone(tiny):
    sol = solve_milp(assemble(tiny, "risk"))
    hist = np.array(sol.bound_history)
    assert len(hist) > 0
    assert np.all(np.diff(hist) >= -1e-9 * (1 + np.abs(hist[:-1])))
    assert sol.bound <= sol.objective + 1e-9


def test_node_limit_returns_limit_status(reference):
    sol = solve_milp(assemble(reference, "risk"), BnbOptions(node_limit=3))
    assert sol.status == "limit"
    assert sol.nodes <= 3
    if sol.x is not None:
        assert sol.bound <= sol.objective


def test_deterministic_node_order(tiny):
    inst = assemble(tiny, "ghg")
    a, b = solve_milp(inst), solve_milp(inst)
    assert a.nodes == b.nodes and a.objective == b.objective
    assert np.array_equal(a.x, b.x)


def test_start_seeds_incumbent(tiny):
    inst = assemble(tiny, "cost")
    first = solve_milp(inst)
    seeded = solve_milp(inst, starts=[first.x])
    assert seeded.objective == pytest.approx(first.objective, rel=1e-9)
    assert seeded.nodes <= first.nodes


def test_backends_agree(tiny):
    inst = assemble(tiny, "cost")
    ours, highs = solve(inst, "bnb"), solve(inst, "highs")
    assert highs.backend == "highs"
    assert ours.objective == pytest.approx(highs.objective, rel=1e-6)
    with pytest.raises(ValueError):
        solve(inst, "cplex")


def test_kpis_attached(tiny):
    sol = solve_milp(assemble(tiny))
    assert math.isclose(sol.kpis["tdc_keur_per_day"], sol.objective, rel_tol=1e-9)
