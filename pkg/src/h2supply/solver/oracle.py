"""Brute-force MILP ground truth: one LP per integer assignment.

Integer variables that are fixed by an integer equality row once the others
are known (``new = stock[t] - stock[t-1]`` style rows) are derived rather
than enumerated.  Partial assignments are pruned only by bound propagation
over the rows, which never removes a feasible point, and every surviving
full assignment is handed to an independent LP code (HiGHS via scipy).
"""
from __future__ import annotations

import math
import time

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .bnb import MilpSolution, attach_kpis
from .config import DEFAULT


class DomainTooLarge(ValueError):
    def __init__(self, product: float, cap: float):
        super().__init__(f"integer domain product {product:.6g} exceeds cap {cap:.6g}")
        self.product = product
        self.cap = cap


def _dependent(inst, integer) -> dict[int, tuple[int, float]]:
    """Map derived integer column -> (defining row, its coefficient)."""
    A = inst.A.tocsr()
    col_rows = np.diff(A.tocsc().indptr)
    out: dict[int, tuple[int, float]] = {}
    used_rows = set()
    for r in np.flatnonzero(inst.sense == "E"):
        cols = A.indices[A.indptr[r]:A.indptr[r + 1]]
        vals = A.data[A.indptr[r]:A.indptr[r + 1]]
        if not integer[cols].all() or np.any(vals != np.round(vals)) or inst.rhs[r] != round(inst.rhs[r]):
            continue
        for j, a in zip(cols, vals):
            if abs(a) == 1.0 and col_rows[j] == 1 and j not in out and r not in used_rows:
                out[int(j)] = (int(r), float(a))
                used_rows.add(r)
                break
    return out


def domain_product(inst, derived: bool = True) -> float:
    integer = np.asarray(inst.integer, bool)
    lb = np.ceil(inst.lb - DEFAULT.integrality)
    ub = np.floor(inst.ub + DEFAULT.integrality)
    free = set(np.flatnonzero(integer)) - (set(_dependent(inst, integer)) if derived else set())
    prod = 1.0
    for j in free:
        prod *= ub[j] - lb[j] + 1 if math.isfinite(ub[j] - lb[j]) else math.inf
    return prod


class _Propagator:
    """Activity-based bound tightening on ``lo <= A x <= hi``."""

    def __init__(self, A, lo, hi, integer, passes: int = 8):
        A = sp.coo_matrix(A)
        self.row, self.col, self.val = A.row, A.col, A.data
        self.m = A.shape[0]
        self.n = A.shape[1]
        self.lo, self.hi = lo, hi
        self.integer = integer
        self.passes = passes
        self.pos = self.val > 0

    def _activity(self, low, high):
        # per-entry contribution to the minimal and maximal row activity
        cmin = np.where(self.pos, self.val * low[self.col], self.val * high[self.col])
        cmax = np.where(self.pos, self.val * high[self.col], self.val * low[self.col])
        return cmin, cmax

    def _residual(self, contrib, sign):
        # row activity without each entry; infinite parts tracked by count
        inf = ~np.isfinite(contrib)
        finite = np.where(inf, 0.0, contrib)
        fsum = np.bincount(self.row, finite, self.m)
        icount = np.bincount(self.row, inf.astype(float), self.m)
        rest = fsum[self.row] - finite
        others = icount[self.row] - inf
        return np.where(others > 0, sign * np.inf, rest)

    def run(self, low, high) -> bool:
        """Tighten ``low``/``high`` in place; False if infeasibility is proven."""
        tol = 1e-7
        for _ in range(self.passes):
            cmin, cmax = self._activity(low, high)
            rmin = self._residual(cmin, -1.0)
            rmax = self._residual(cmax, 1.0)
            amin = rmin + cmin
            amax = rmax + cmax
            scale = 1.0 + np.abs(self.hi[self.row])
            if np.any(amin - self.hi[self.row] > tol * scale) or np.any(self.lo[self.row] - amax > tol * (1.0 + np.abs(self.lo[self.row]))):
                return False
            # a*x <= hi - rmin  and  a*x >= lo - rmax
            with np.errstate(invalid="ignore"):
                up = (self.hi[self.row] - rmin) / self.val
                dn = (self.lo[self.row] - rmax) / self.val
            new_high = np.where(self.pos, up, dn)
            new_low = np.where(self.pos, dn, up)
            nh = high.copy()
            nl = low.copy()
            ok_h = np.isfinite(new_high)
            ok_l = np.isfinite(new_low)
            np.minimum.at(nh, self.col[ok_h], new_high[ok_h] + 1e-9 * (1.0 + np.abs(new_high[ok_h])))
            np.maximum.at(nl, self.col[ok_l], new_low[ok_l] - 1e-9 * (1.0 + np.abs(new_low[ok_l])))
            nh[self.integer] = np.floor(nh[self.integer] + DEFAULT.integrality)
            nl[self.integer] = np.ceil(nl[self.integer] - DEFAULT.integrality)
            if np.any(nl > nh + 1e-6 * (1.0 + np.abs(nh))):
                return False
            nl = np.minimum(nl, nh)
            with np.errstate(invalid="ignore"):
                changed = np.any(nh < high - 1e-9 * (1.0 + np.abs(high))) or np.any(nl > low + 1e-9 * (1.0 + np.abs(low)))
            high[:] = nh
            low[:] = nl
            if not changed:
                break
        return True


def enumerate_oracle(inst, domain_cap: float = 1e6, propagate: bool = True,
                     time_limit: float = math.inf) -> MilpSolution:
    """Exhaustive MILP solve of ``inst``; refuses when the domain product exceeds ``domain_cap``.

    With ``propagate=False`` every integer variable is enumerated and every
    assignment costs one LP.
    """
    t0 = time.monotonic()
    integer = np.asarray(inst.integer, bool)
    lb = np.asarray(inst.lb, float).copy()
    ub = np.asarray(inst.ub, float).copy()
    lb[integer] = np.ceil(lb[integer] - DEFAULT.integrality)
    ub[integer] = np.floor(ub[integer] + DEFAULT.integrality)
    derived = _dependent(inst, integer) if propagate else {}
    free = [int(j) for j in np.flatnonzero(integer) if j not in derived]
    product = 1.0
    for j in free:
        product *= ub[j] - lb[j] + 1 if math.isfinite(ub[j] - lb[j]) else math.inf
    if product > domain_cap:
        raise DomainTooLarge(product, domain_cap)

    lo, hi = inst.row_bounds()
    A = inst.A.tocsr()
    prop = _Propagator(A, lo, hi, integer) if propagate else None
    row_args = _row_args(A, lo, hi)
    out = MilpSolution("infeasible", backend="oracle")
    best, best_x = math.inf, None
    unbounded = False

    def leaf(low, high):
        nonlocal best, best_x, unbounded
        for j, (r, a) in derived.items():
            cols = A.indices[A.indptr[r]:A.indptr[r + 1]]
            vals = A.data[A.indptr[r]:A.indptr[r + 1]]
            v = (inst.rhs[r] - sum(val * low[c] for c, val in zip(cols, vals) if c != j)) / a
            if not lb[j] <= v <= ub[j]:
                return
            low[j] = high[j] = v
        res = linprog(inst.c, bounds=np.column_stack([low, high]), method="highs", **row_args)
        out.lp_count += 1
        if res.status == 3:
            unbounded = True
        elif res.status == 0:
            obj = float(res.fun) + inst.c0
            if obj < best - 1e-12 * max(1.0, abs(obj)):
                best, best_x = obj, np.asarray(res.x, float)

    def visit(k, low, high):
        out.nodes += 1
        if time.monotonic() - t0 > time_limit:
            raise TimeoutError("oracle time limit reached")
        if prop is not None and not prop.run(low, high):
            return
        if k == len(free):
            leaf(low, high)
            return
        j = free[k]
        for v in range(int(low[j]), int(high[j]) + 1):
            cl, ch = low.copy(), high.copy()
            cl[j] = ch[j] = v
            visit(k + 1, cl, ch)

    visit(0, lb, ub)
    out.seconds = time.monotonic() - t0
    if best_x is not None:
        out.status = "optimal"
        out.x = best_x
        out.objective = out.bound = best
        return attach_kpis(out, inst)
    out.status = "unbounded" if unbounded else "infeasible"
    return out


def _row_args(A, lo, hi) -> dict:
    """Express ``lo <= A x <= hi`` as linprog's equality and upper-bound blocks."""
    eq = np.isfinite(lo) & np.isfinite(hi) & (lo == hi)
    up = np.isfinite(hi) & ~eq
    dn = np.isfinite(lo) & ~eq
    blocks, rhs = [], []
    if up.any():
        blocks.append(A[up])
        rhs.append(hi[up])
    if dn.any():
        blocks.append(-A[dn])
        rhs.append(-lo[dn])
    args = {}
    if blocks:
        args["A_ub"] = sp.vstack(blocks).tocsr()
        args["b_ub"] = np.concatenate(rhs)
    if eq.any():
        args["A_eq"] = A[eq]
        args["b_eq"] = lo[eq]
    return args
