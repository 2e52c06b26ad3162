import math

import numpy as np
import pytest

from h2supply.solver import LpEngine, solve_lp, solve_milp

from randinst import make_instance, random_lp
from reference import dense_lp


def test_single_lower_bound_row():
    inst = make_instance([1.0], [[1.0]], ["G"], [3.0], [0.0], [math.inf])
    sol = solve_lp(inst)
    assert sol.status == "optimal"
    assert sol.x[0] == pytest.approx(3.0)
    assert sol.objective == pytest.approx(3.0)


def test_contradictory_rows_certificate():
    inst = make_instance([1.0], [[1.0], [1.0]], ["L", "G"], [1.0, 2.0], [0.0], [math.inf])
    sol = solve_lp(inst)
    assert sol.status == "infeasible"
    assert set(sol.certificate) == {"r0", "r1"}


def test_unbounded_ray():
    inst = make_instance([-1.0, 0.0], [[0.0, 1.0]], ["L"], [4.0], [0.0, 0.0], [math.inf, math.inf])
    assert solve_lp(inst).status == "unbounded"


def test_random_twenty_by_thirty_lps():
    rng = np.random.default_rng(5)
    for _ in range(10):
        inst = random_lp(rng, n=30, m=20)
        ours = solve_lp(inst)
        lo, hi = inst.row_bounds()
        ref = dense_lp(inst.c, inst.A.toarray(), lo, hi, inst.lb, inst.ub)
        assert ours.status == {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
        if ref.status == 0:
            assert ours.objective == pytest.approx(ref.fun, rel=1e-7, abs=1e-7)
            assert inst.violations(ours.x).max(initial=0) < 1e-7


def test_weak_duality_spot_check():
    # min c.x, A x >= b, x >= 0: any y >= 0 with A^T y <= c bounds the optimum from below
    rng = np.random.default_rng(9)
    for _ in range(20):
        m, n = rng.integers(2, 6), rng.integers(2, 7)
        A = rng.uniform(0, 2, (m, n))
        b = rng.uniform(1, 3, m)
        c = rng.uniform(0.5, 2, n)
        inst = make_instance(c, A, ["G"] * m, b, np.zeros(n), np.full(n, math.inf))
        sol = solve_lp(inst)
        assert sol.status == "optimal"
        for y in (np.abs(sol.duals), rng.uniform(0, 1, m)):
            aty = A.T @ y
            y = y * min(1.0, np.min(np.where(aty > 0, c / np.maximum(aty, 1e-300), np.inf)))
            assert b @ y <= sol.objective + 1e-9
        assert abs(sol.duals) @ b == pytest.approx(sol.objective, rel=1e-8)


def test_reduced_costs_match_duals():
    rng = np.random.default_rng(2)
    inst = random_lp(rng, n=8, m=5)
    while solve_lp(inst).status != "optimal":
        inst = random_lp(rng, n=8, m=5)
    sol = solve_lp(inst)
    assert sol.reduced_costs == pytest.approx(inst.c - sol.duals @ inst.A.toarray(), abs=1e-9)


def test_all_continuous_milp_equals_lp():
    rng = np.random.default_rng(4)
    for _ in range(5):
        inst = random_lp(rng)
        lp, milp = solve_lp(inst), solve_milp(inst)
        assert milp.status == lp.status or (lp.status == "unbounded" and milp.status in ("unbounded", "infeasible"))
        if lp.status == "optimal":
            assert milp.objective == pytest.approx(lp.objective, rel=1e-9, abs=1e-9)
            assert milp.nodes <= 1


def test_warm_start_reuses_basis(reference):
    from h2supply.model import assemble
    inst = assemble(reference)
    eng = LpEngine.from_instance(inst)
    first = eng.solve(inst.lb, inst.ub)
    again = eng.solve(inst.lb, inst.ub, first.basis)
    assert again.objective == pytest.approx(first.objective, rel=1e-9)
    assert again.iterations <= 1


def test_tight_bound_relaxation_matches_reference(reference):
    # basics resting a hair outside their bounds once left the ratio test without candidates
    from h2supply.model import assemble
    inst = assemble(reference, "cost", {"ghg": 0.45})
    ours = solve_lp(inst)
    lo, hi = inst.row_bounds()
    ref = dense_lp(inst.c, inst.A.toarray(), lo, hi, inst.lb, inst.ub)
    assert ours.status == {0: "optimal", 2: "infeasible"}[ref.status]
    if ref.status == 0:
        assert ours.objective == pytest.approx(ref.fun + inst.c0, rel=1e-7)
