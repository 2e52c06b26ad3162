"""Best-first branch-and-bound over the in-repo simplex."""
from __future__ import annotations

import heapq
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .config import DEFAULT
from .lp import Basis, LpEngine, LpSolution

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BnbOptions:
    abs_gap: float = 1e-6
    rel_gap: float = 1e-6
    node_limit: int = 200_000
    time_limit: float = 600.0  # seconds
    branching: str = "most_fractional"  # or "first_fractional"
    integrality: float = DEFAULT.integrality
    log_every: int = 0  # nodes between progress lines on stderr; 0 = silent
    dive_every: int = 200  # nodes between rounding dives while no incumbent exists; 0 = root only

    def __post_init__(self):
        for name in ("abs_gap", "rel_gap", "integrality", "time_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.branching not in ("most_fractional", "first_fractional"):
            raise ValueError(f"unknown branching rule {self.branching!r}")


@dataclass
class MilpSolution:
    status: str  # optimal | infeasible | unbounded | limit
    x: np.ndarray | None = None
    objective: float = math.nan
    bound: float = math.nan
    nodes: int = 0
    lp_count: int = 0
    seconds: float = 0.0
    certificate: list[str] = field(default_factory=list)
    bound_history: list[float] = field(default_factory=list)
    kpis: dict | None = None
    backend: str = "bnb"

    @property
    def feasible(self) -> bool:
        return self.x is not None

    @property
    def gap(self) -> float:
        if self.x is None or not math.isfinite(self.bound):
            return math.inf
        return abs(self.objective - self.bound) / max(1.0, abs(self.objective))


@dataclass(order=True)
class _Node:
    key: float  # bound rounded so that plateaus are explored depth first
    neg_depth: int
    seq: int
    bound: float = field(compare=False)
    lb: np.ndarray = field(compare=False)
    ub: np.ndarray = field(compare=False)
    x: np.ndarray = field(compare=False)
    basis: Basis = field(compare=False)
    lp_obj: float = field(compare=False, default=math.nan)
    rc: np.ndarray | None = field(compare=False, default=None)


def _pick_branch(x, integer, tol, rule):
    idx = np.flatnonzero(integer)
    frac = x[idx] - np.floor(x[idx])
    dist = np.minimum(frac, 1.0 - frac)
    cand = dist > tol
    if not cand.any():
        return -1
    if rule == "first_fractional":
        return int(idx[np.flatnonzero(cand)[0]])
    # most fractional; argmax returns the lowest index among ties
    return int(idx[np.argmax(np.where(cand, dist, -1.0))])


def _key(bound: float) -> float:
    if bound == 0 or not math.isfinite(bound):
        return bound
    return float(f"{bound:.9e}")


def dive(engine: LpEngine, x, lb, ub, basis, integer, tol, limit: int):
    """Round-and-fix dive: fix the most fractional variable to its nearest
    integer (the other side on failure) until the LP turns integral.
    Returns (objective, x, lp_count) or (inf, None, lp_count)."""
    lb, ub = lb.copy(), ub.copy()
    count = 0
    for _ in range(limit):
        j = _pick_branch(x, integer, tol, "most_fractional")
        if j < 0:
            sol = polish(engine, x, lb, ub, integer, basis)
            count += 1
            if sol.status == "optimal":
                return sol.objective, sol.x, count
            return math.inf, None, count
        near = math.floor(x[j] + 0.5)
        for v in (near, near - 1 if near > x[j] else near + 1):
            if v < lb[j] or v > ub[j]:
                continue
            tlb, tub = lb.copy(), ub.copy()
            tlb[j] = tub[j] = v
            sol = engine.solve(tlb, tub, basis)
            count += 1
            if sol.status == "optimal":
                lb, ub, x, basis = tlb, tub, sol.x, sol.basis
                break
        else:
            return math.inf, None, count
    return math.inf, None, count


def objective_step(c: np.ndarray, integer: np.ndarray, max_den: int = 10_000) -> float:
    """Common step of the objective over integer points, or 0 when none applies.

    When only integer variables carry cost and all costs are integer multiples
    of one step, every integer-feasible objective lies on that lattice."""
    nz = np.flatnonzero(c)
    if nz.size == 0 or not integer[nz].all():
        return 0.0
    fr = [Fraction(float(v)).limit_denominator(max_den) for v in c[nz]]
    if any(abs(float(f) - v) > 1e-12 * max(1.0, abs(v)) for f, v in zip(fr, c[nz])):
        return 0.0
    num = math.gcd(*(abs(f.numerator) for f in fr))
    den = math.lcm(*(f.denominator for f in fr))
    return num / den


def _lift(bound: float, step: float, c0: float) -> float:
    if step <= 0 or not math.isfinite(bound):
        return bound
    k = math.ceil((bound - c0) / step - 1e-6)
    return max(bound, c0 + k * step)


def reduced_cost_fix(lb, ub, x, rc, lp_obj, cutoff, integer) -> int:
    """Tighten integer bounds in place: moving a nonbasic variable by delta off
    its bound raises the LP value by at least |rc|*delta, so no point with
    objective below ``cutoff`` lies beyond the returned limit."""
    if rc is None or not math.isfinite(cutoff):
        return 0
    slack = cutoff - lp_obj
    if slack < 0:
        return 0
    changed = 0
    for j in np.flatnonzero(integer & (np.abs(rc) > 1e-9)):
        reach = math.floor(slack / abs(rc[j]) + 1e-6)
        if rc[j] > 0 and x[j] <= lb[j] + 1e-9 and lb[j] + reach < ub[j]:
            ub[j] = lb[j] + reach
            changed += 1
        elif rc[j] < 0 and x[j] >= ub[j] - 1e-9 and ub[j] - reach > lb[j]:
            lb[j] = ub[j] - reach
            changed += 1
    return changed


def _integral_bounds(lb, ub, integer):
    lb, ub = lb.copy(), ub.copy()
    lb[integer] = np.ceil(lb[integer] - DEFAULT.integrality)
    ub[integer] = np.floor(ub[integer] + DEFAULT.integrality)
    return lb, ub


def polish(engine: LpEngine, x: np.ndarray, lb, ub, integer, basis=None) -> LpSolution:
    """Re-solve the continuous part with integer variables fixed at rounded values."""
    xi = np.round(x[integer])
    flb, fub = lb.copy(), ub.copy()
    flb[integer] = xi
    fub[integer] = xi
    return engine.solve(flb, fub, basis)


def attach_kpis(sol: MilpSolution, inst) -> MilpSolution:
    if sol.x is not None and "expressions" in inst.meta:
        from ..model.kpi import evaluate
        sol.kpis = evaluate(inst, sol.x)
    return sol


def solve_milp(inst, opts: BnbOptions | None = None, engine: LpEngine | None = None,
               starts=()) -> MilpSolution:
    """Minimize ``inst`` to within the configured gap.

    ``starts`` are candidate points (e.g. solutions of a related instance);
    each one whose integer part is feasible seeds the incumbent after its
    continuous part is re-optimized.
    """
    opts = opts or BnbOptions()
    t0 = time.monotonic()
    engine = engine or LpEngine.from_instance(inst)
    integer = np.asarray(inst.integer, bool)
    lb, ub = _integral_bounds(np.asarray(inst.lb, float), np.asarray(inst.ub, float), integer)
    out = MilpSolution("infeasible")

    root = engine.solve(lb, ub)
    out.lp_count = 1
    if root.status != "optimal":
        out.status = root.status
        out.certificate = root.certificate
        out.seconds = time.monotonic() - t0
        return out

    incumbent, inc_x = math.inf, None
    step = objective_step(np.asarray(inst.c, float), integer)
    c0 = float(inst.c0)
    rb = _lift(root.objective, step, c0)
    heap = [_Node(_key(rb), 0, 0, rb, lb, ub, root.x, root.basis, root.objective, root.reduced_costs)]
    dive_limit = int(integer.sum()) + 1
    for x0 in starts:
        x0 = np.asarray(x0, float)
        if x0.shape != lb.shape or np.any(np.abs(x0[integer] - np.round(x0[integer])) > opts.integrality):
            continue
        if np.any(np.round(x0[integer]) < lb[integer]) or np.any(np.round(x0[integer]) > ub[integer]):
            continue
        fixed = polish(engine, x0, lb, ub, integer, root.basis)
        out.lp_count += 1
        if fixed.status == "optimal" and fixed.objective < incumbent:
            incumbent, inc_x = fixed.objective, fixed.x
    seq = 1
    global_bound = rb
    history = [global_bound]
    nodes = 0
    status = "optimal"

    def gap_closed(bound):
        if not math.isfinite(incumbent):
            return False
        return incumbent - bound <= max(opts.abs_gap, opts.rel_gap * abs(incumbent))

    while heap:
        lowest = min(n.bound for n in heap)
        global_bound = max(global_bound, lowest)
        history.append(min(global_bound, incumbent))
        if gap_closed(lowest):
            break
        if nodes >= opts.node_limit or time.monotonic() - t0 > opts.time_limit:
            status = "limit"
            break
        node = heapq.heappop(heap)
        nodes += 1
        if inc_x is None and (nodes == 1 or (opts.dive_every and nodes % opts.dive_every == 0)):
            obj, xd, count = dive(engine, node.x, node.lb, node.ub, node.basis, integer, opts.integrality, dive_limit)
            out.lp_count += count
            if xd is not None:
                incumbent, inc_x = obj, xd
                if gap_closed(node.bound):
                    continue
        if opts.log_every and nodes % opts.log_every == 0:
            print(f"bnb node {nodes} open {len(heap)} bound {global_bound:.9g} incumbent {incumbent:.9g}",
                  file=sys.stderr)
        if inc_x is not None:
            cutoff = incumbent - max(opts.abs_gap, opts.rel_gap * abs(incumbent))
            reduced_cost_fix(node.lb, node.ub, node.x, node.rc, node.lp_obj, cutoff, integer)
        j = _pick_branch(node.x, integer, opts.integrality, opts.branching)
        if j < 0:
            fixed = polish(engine, node.x, node.lb, node.ub, integer, node.basis)
            out.lp_count += 1
            if fixed.status == "optimal" and fixed.objective < incumbent:
                incumbent, inc_x = fixed.objective, fixed.x
                heap = [n for n in heap if not gap_closed(n.bound)]
                heapq.heapify(heap)
            continue
        v = node.x[j]
        for side in ("down", "up"):
            clb, cub = node.lb.copy(), node.ub.copy()
            if side == "down":
                cub[j] = math.floor(v)
            else:
                clb[j] = math.ceil(v)
            if clb[j] > cub[j]:
                continue
            child = engine.solve(clb, cub, node.basis)
            out.lp_count += 1
            if child.status == "unbounded":
                out.status = "unbounded"
                return out
            if child.status != "optimal":
                continue
            bound = max(_lift(child.objective, step, c0), node.bound)
            if gap_closed(bound):
                continue
            heapq.heappush(heap, _Node(_key(bound), node.neg_depth - 1, seq, bound, clb, cub, child.x, child.basis,
                                       child.objective, child.reduced_costs))
            seq += 1

    if not heap and status == "optimal":
        global_bound = incumbent
    history.append(min(global_bound, incumbent))
    out.nodes = nodes
    out.bound_history = history
    out.seconds = time.monotonic() - t0
    if inc_x is None:
        out.status = "limit" if status == "limit" else "infeasible"
        out.bound = global_bound
        return out
    out.status = status
    out.x = inc_x
    out.objective = incumbent
    out.bound = min(global_bound, incumbent)
    if opts.log_every:
        print(f"bnb done: {nodes} nodes, objective {incumbent:.9g}, bound {out.bound:.9g}", file=sys.stderr)
    return attach_kpis(out, inst)
