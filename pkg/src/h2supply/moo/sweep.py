"""Epsilon-constraint sweep: cost is minimized with GHG and risk bounded."""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ..model import OBJECTIVES, assemble, evaluate, objective_values
from ..scenario.types import Scenario
from ..solver import BnbOptions, solve
from .pareto import ParetoFront, ParetoPoint, pareto_filter

log = logging.getLogger(__name__)


FRONT_DIGITS = 9  # significant digits used to compare and coalesce front points


class SweepError(RuntimeError):
    pass


def jobs_from_env(default: int = 1) -> int:
    raw = os.environ.get("H2SUPPLY_JOBS", "")
    try:
        return max(1, int(raw)) if raw else default
    except ValueError:
        raise SweepError(f"H2SUPPLY_JOBS must be an integer, got {raw!r}") from None


def payoff_table(s: Scenario, backend: str = "bnb", opts: BnbOptions | None = None):
    """Solve each single-objective problem; return (table, solutions).

    ``table[anchor][criterion]`` is the criterion value at that anchor's optimum."""
    table, sols = {}, {}
    for obj in OBJECTIVES:
        inst = assemble(s, obj)
        sol = solve(inst, backend, opts, starts=[x for x in sols.values()])
        if sol.x is None:
            raise SweepError(f"empty feasible region: {obj} anchor is {sol.status}")
        if sol.status != "optimal":
            log.warning("%s anchor stopped at %s with gap %.3g", obj, sol.status, sol.gap)
        table[obj] = objective_values(inst, sol.x)
        sols[obj] = sol.x
    return table, sols


def eps_grid(table, criterion: str, n: int) -> list[float]:
    """``n`` evenly spaced bounds spanning the payoff-table range, inclusive;
    a single cell means the criterion is left unbounded."""
    if n < 1:
        raise ValueError("grid counts must be >= 1")
    if n == 1:
        return [math.inf]
    vals = [row[criterion] for row in table.values()]
    return [float(v) for v in np.linspace(min(vals), max(vals), n)]


def _solve_cell(args):
    s, eg, er, backend, opts, starts = args
    inst = assemble(s, "cost", {"ghg": eg, "risk": er})
    sol = solve(inst, backend, opts, starts=starts)
    if sol.x is None:
        return None
    k = sol.kpis or evaluate(inst, sol.x)
    return ParetoPoint(k["tdc_keur_per_day"], k["ghg_t_per_day"], k["risk"], k["lcoh_eur_per_kg"],
                       eg, er, sol.x, k, sol.status)


def epsilon_sweep(s: Scenario, n_ghg: int, n_risk: int, backend: str = "bnb",
                  opts: BnbOptions | None = None, jobs: int | None = None) -> ParetoFront:
    """Cost-primary solves on an ``n_ghg`` x ``n_risk`` grid of bounds,
    filtered to the nondominated set.  ``jobs`` (default: ``H2SUPPLY_JOBS``)
    cells are solved concurrently, each in its own process."""
    if n_ghg < 1 or n_risk < 1:
        raise ValueError("grid counts must be >= 1")
    table, anchors = payoff_table(s, backend, opts)
    g_grid = eps_grid(table, "ghg", n_ghg)
    r_grid = eps_grid(table, "risk", n_risk)
    starts = list(anchors.values())
    cells = [(i, j) for i in range(n_ghg) for j in range(n_risk)]
    tasks = [(s, g_grid[i], r_grid[j], backend, opts, starts) for i, j in cells]
    jobs = jobs or jobs_from_env()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_cell, tasks))
    else:
        results = [_solve_cell(t) for t in tasks]
    grid = dict(zip(cells, results))
    for (i, j), p in grid.items():
        if p is None:
            log.info("cell ghg<=%.6g risk<=%.6g infeasible, skipped", g_grid[i], r_grid[j])
    points = pareto_filter([p for p in results if p is not None], digits=FRONT_DIGITS)
    return ParetoFront(points, table, g_grid, r_grid, grid)
