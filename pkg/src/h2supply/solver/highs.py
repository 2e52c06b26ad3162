"""Cross-check backend: the same instance handed to HiGHS through scipy."""
from __future__ import annotations

import math
import time

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .bnb import BnbOptions, MilpSolution, attach_kpis

_STATUS = {0: "optimal", 1: "limit", 2: "infeasible", 3: "unbounded"}


def solve_highs(inst, opts: BnbOptions | None = None) -> MilpSolution:
    """Solve ``inst`` with HiGHS using the gap and time limits of ``opts``."""
    opts = opts or BnbOptions()
    t0 = time.monotonic()
    lo, hi = inst.row_bounds()
    constraints = [LinearConstraint(inst.A, lo, hi)] if inst.m else []
    res = milp(
        np.asarray(inst.c, float),
        constraints=constraints,
        integrality=np.asarray(inst.integer, int),
        bounds=Bounds(inst.lb, inst.ub),
        options={"mip_rel_gap": opts.rel_gap, "time_limit": opts.time_limit,
                 "node_limit": opts.node_limit, "disp": False},
    )
    status = _STATUS.get(res.status, "limit")
    out = MilpSolution(status, backend="highs", seconds=time.monotonic() - t0, lp_count=0)
    if res.x is not None:
        out.x = np.asarray(res.x, float)
        out.objective = float(res.fun) + inst.c0
        bound = getattr(res, "mip_dual_bound", None)
        out.bound = float(bound) + inst.c0 if bound is not None and math.isfinite(bound) else out.objective
        out.nodes = int(getattr(res, "mip_node_count", 0) or 0)
        return attach_kpis(out, inst)
    if status == "optimal":  # defensive: HiGHS reported success without a point
        out.status = "limit"
    return out
