"""Bounded-variable revised primal simplex.

Each row ``k`` gets a logical variable ``r_k = a_k . x`` carrying the row's
bounds, so the working problem is

    min c.z   s.t.  [A  -I] z = 0,   lo <= z <= hi.

Phase 1 minimizes the sum of bound violations of the basic variables
(composite rule: infeasible basics may move toward their violated bound
and stop there).  Pricing is Dantzig's largest reduced cost; after a run
of degenerate pivots it falls back to Bland's smallest-index rule until
progress resumes.  The basis is held as a sparse LU factorization plus a
product-form list of pivot updates, refactored every few dozen pivots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .config import DEFAULT, Tolerances

LOWER, UPPER, ZERO, BASIC = 0, 1, 2, 3


class LpError(Exception):
    """Numerical breakdown of the simplex method."""


@dataclass
class Basis:
    """Basic column list plus the resting bound of every column."""
    basic: np.ndarray  # column index per basis position
    state: np.ndarray  # LOWER / UPPER / ZERO / BASIC per column

    def copy(self) -> "Basis":
        return Basis(self.basic.copy(), self.state.copy())


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded
    x: np.ndarray | None = None
    objective: float = math.nan
    duals: np.ndarray | None = None  # one per row
    reduced_costs: np.ndarray | None = None
    basis: Basis | None = None
    iterations: int = 0
    certificate: list[str] = field(default_factory=list)  # rows behind an infeasibility

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def basis_summary(self) -> dict:
        if self.basis is None:
            return {}
        st = self.basis.state
        return {"basic": int((st == BASIC).sum()), "at_lower": int((st == LOWER).sum()),
                "at_upper": int((st == UPPER).sum()), "free_zero": int((st == ZERO).sum())}


class _Factor:
    """LU of a basis matrix followed by eta updates, B^-1 = E_k ... E_1 B0^-1."""

    def __init__(self, B: sp.csc_matrix, max_condition: float):
        self.m = B.shape[0]
        self.etas: list[tuple[int, np.ndarray]] = []
        if self.m == 0:
            self.lu = None
            return
        self.lu = spla.splu(B, permc_spec="COLAMD")
        d = np.abs(self.lu.U.diagonal())
        if d.min() == 0 or d.max() / d.min() > max_condition:
            raise np.linalg.LinAlgError(f"pivot ratio {d.max() / max(d.min(), 1e-300):.3e}")

    def ftran(self, v: np.ndarray) -> np.ndarray:
        if self.lu is None:
            return np.zeros(0)
        x = self.lu.solve(np.asarray(v, float))
        for r, a in self.etas:
            xr = x[r] / a[r]
            x -= a * xr
            x[r] = xr
        return x

    def btran(self, c: np.ndarray) -> np.ndarray:
        if self.lu is None:
            return np.zeros(0)
        u = np.array(c, float)
        for r, a in reversed(self.etas):
            s = u @ a - u[r] * a[r]
            u[r] = (u[r] - s) / a[r]
        return self.lu.solve(u, trans="T")

    def update(self, r: int, alpha: np.ndarray) -> None:
        self.etas.append((r, alpha.copy()))


def _pow2(v: np.ndarray) -> np.ndarray:
    return np.exp2(np.round(np.log2(v)))


def equilibrate(A: np.ndarray, passes: int = 6) -> tuple[np.ndarray, np.ndarray]:
    """Geometric row/column scaling factors, rounded to powers of two."""
    m, n = A.shape
    R, C = np.ones(m), np.ones(n)
    absA = np.abs(A)
    nz = absA > 0
    for _ in range(passes):
        S = absA * R[:, None] * C[None, :]
        big = np.where(nz, S, 0.0).max(axis=1, initial=0.0)
        small = np.where(nz, S, np.inf).min(axis=1, initial=np.inf)
        ok = big > 0
        R[ok] /= np.sqrt(big[ok] * small[ok])
        S = absA * R[:, None] * C[None, :]
        big = np.where(nz, S, 0.0).max(axis=0, initial=0.0)
        small = np.where(nz, S, np.inf).min(axis=0, initial=np.inf)
        ok = big > 0
        C[ok] /= np.sqrt(big[ok] * small[ok])
    return _pow2(R), _pow2(C)


class LpEngine:
    """Scaled problem data shared by many solves that differ only in column bounds."""

    def __init__(self, A, row_lo, row_hi, c, c0: float = 0.0, row_names=None, tol: Tolerances = DEFAULT,
                 scale: bool = True):
        A = A.toarray() if hasattr(A, "toarray") else np.asarray(A, float)
        self.m, self.n = A.shape
        self.tol = tol
        self.R, self.C = equilibrate(A) if scale and A.size else (np.ones(self.m), np.ones(self.n))
        As = A * self.R[:, None] * self.C[None, :]
        self.W = np.hstack([As, -np.eye(self.m)])
        self.Wc = sp.csc_matrix(self.W)
        cs = np.asarray(c, float) * self.C
        cmax = np.abs(cs).max(initial=0.0)
        self.obj_scale = float(_pow2(np.array([1.0 / cmax]))[0]) if cmax > 0 else 1.0
        self.cost = np.concatenate([cs * self.obj_scale, np.zeros(self.m)])
        self.c = np.asarray(c, float)
        self.c0 = float(c0)
        self.A = A
        self.row_lo = np.asarray(row_lo, float) * self.R
        self.row_hi = np.asarray(row_hi, float) * self.R
        self.row_names = list(row_names) if row_names is not None else [f"R{k + 1}" for k in range(self.m)]

    @classmethod
    def from_instance(cls, inst, tol: Tolerances = DEFAULT, scale: bool = True) -> "LpEngine":
        lo, hi = inst.row_bounds()
        return cls(inst.A, lo, hi, inst.c, inst.c0, inst.row_names, tol, scale)

    # -- one solve -------------------------------------------------------
    def solve(self, lb, ub, basis: Basis | None = None, max_iter: int | None = None) -> LpSolution:
        return _Simplex(self, np.asarray(lb, float), np.asarray(ub, float), basis, max_iter).run()


class _Simplex:
    def __init__(self, eng: LpEngine, lb, ub, basis, max_iter):
        self.e = eng
        m, n = eng.m, eng.n
        self.tol = eng.tol
        with np.errstate(invalid="ignore"):
            self.lo = np.concatenate([lb / eng.C, eng.row_lo])
            self.hi = np.concatenate([ub / eng.C, eng.row_hi])
        if np.any(self.lo > self.hi):
            self.crossed = True
            return
        self.crossed = False
        self.max_iter = max_iter or 50 * (m + n) + 1000
        self.iters = 0
        N = n + m
        self.z = np.zeros(N)
        if basis is not None and len(basis.basic) == m and basis.state.shape == (N,):
            self.basic = basis.basic.copy()
            self.state = basis.state.copy()
        else:
            self.basic = np.arange(n, n + m)
            self.state = np.full(N, LOWER)
            self.state[self.basic] = BASIC
        for j in np.flatnonzero(self.state != BASIC):
            self._rest(j)
        if not self._factor():
            self.basic = np.arange(n, n + m)
            self.state = np.where(np.arange(N) >= n, BASIC, LOWER)
            for j in range(n):
                self._rest(j)
            self._factor()

    def _rest(self, j):
        """Place nonbasic column j on a bound, keeping its previous side when possible."""
        lo, hi = self.lo[j], self.hi[j]
        if self.state[j] == UPPER and np.isfinite(hi):
            side = UPPER
        elif np.isfinite(lo):
            side = LOWER
        elif np.isfinite(hi):
            side = UPPER
        else:
            side = ZERO
        self.state[j] = side
        self.z[j] = {LOWER: lo, UPPER: hi, ZERO: 0.0}[side]

    def _factor(self) -> bool:
        try:
            self.F = _Factor(self.e.Wc[:, self.basic], self.tol.max_condition)
        except (RuntimeError, np.linalg.LinAlgError):
            return False
        self._recompute_basics()
        return True

    def _recompute_basics(self):
        zn = self.z.copy()
        zn[self.basic] = 0.0
        self.z[self.basic] = self.F.ftran(-(self.e.W @ zn))

    def _infeasibility(self):
        zb = self.z[self.basic]
        lo, hi = self.lo[self.basic], self.hi[self.basic]
        below = zb < lo - self.tol.primal
        above = zb > hi + self.tol.primal
        return below, above

    def run(self) -> LpSolution:
        if self.crossed:
            return LpSolution("infeasible", certificate=["crossed variable bounds"])
        stall = 0
        since_factor = 0
        bland = False
        for attempt in range(3):
            while True:
                if self.iters >= self.max_iter:
                    raise LpError(f"iteration limit {self.max_iter} reached (m={self.e.m}, n={self.e.n})")
                below, above = self._infeasibility()
                phase1 = bool(below.any() or above.any())
                if phase1:
                    cb = np.where(below, -1.0, np.where(above, 1.0, 0.0))
                    cvec = np.zeros_like(self.z)
                else:
                    cb = self.e.cost[self.basic]
                    cvec = self.e.cost
                y = self.F.btran(cb)
                rc = cvec - y @ self.e.W
                j, direction = self._price(rc, bland)
                if j < 0:
                    if phase1:
                        return self._infeasible(y)
                    break
                alpha = self.F.ftran(self.e.W[:, j])
                step, leave, leave_state = self._ratio(j, alpha, direction, bland)
                if step is None:
                    if phase1:
                        raise LpError("phase 1 ratio test found no breakpoint")
                    return LpSolution("unbounded", iterations=self.iters)
                self.iters += 1
                self._move(j, direction, step, alpha, leave, leave_state)
                stall = stall + 1 if step <= 1e-12 else 0
                if stall > self.tol.stall_limit:
                    bland = True
                elif stall == 0:
                    bland = False
                if leave >= 0:
                    since_factor += 1
                    if since_factor >= self.tol.refactor_every:
                        since_factor = 0
                        if not self._factor():
                            raise LpError(self._diagnose())
            # optimal for the current data; confirm on a fresh factorization
            if not self._factor():
                raise LpError(self._diagnose())
            below, above = self._infeasibility()
            if not (below.any() or above.any()):
                return self._optimal()
        raise LpError("basic solution keeps drifting infeasible after refactorization")

    def _price(self, rc, bland):
        st, d = self.state, self.tol.dual
        movable = self.hi > self.lo
        up = ((st == LOWER) | (st == ZERO)) & (rc < -d) & movable
        down = ((st == UPPER) | (st == ZERO)) & (rc > d) & movable
        cand = up | down
        if not cand.any():
            return -1, 0
        if bland:
            j = int(np.flatnonzero(cand)[0])
        else:
            score = np.where(cand, np.abs(rc), -1.0)
            j = int(np.argmax(score))
        return j, (1 if up[j] else -1)

    def _ratio(self, ent, alpha, direction, bland):
        """Step length, leaving basis position (-1 for a bound flip) and its resting state."""
        t = self.tol
        dz = -direction * alpha
        zb = self.z[self.basic]
        lo, hi = self.lo[self.basic], self.hi[self.basic]
        usable = np.abs(alpha) > t.pivot
        below = zb < lo - t.primal
        above = zb > hi + t.primal
        ok = ~below & ~above
        ratio = np.full(len(zb), np.inf)
        relaxed = np.full(len(zb), np.inf)
        target = np.full(len(zb), -1)
        with np.errstate(divide="ignore", invalid="ignore"):
            # feasible basics keep their bounds
            m1 = usable & ok & (dz < 0) & np.isfinite(lo)
            ratio[m1] = (zb[m1] - lo[m1]) / -dz[m1]
            relaxed[m1] = (zb[m1] - lo[m1] + t.harris) / -dz[m1]
            target[m1] = LOWER
            m2 = usable & ok & (dz > 0) & np.isfinite(hi)
            ratio[m2] = (hi[m2] - zb[m2]) / dz[m2]
            relaxed[m2] = (hi[m2] - zb[m2] + t.harris) / dz[m2]
            target[m2] = UPPER
            # infeasible basics stop at the bound they are violating
            m3 = usable & below & (dz > 0)
            ratio[m3] = (lo[m3] - zb[m3]) / dz[m3]
            relaxed[m3] = ratio[m3]
            target[m3] = LOWER
            m4 = usable & above & (dz < 0)
            ratio[m4] = (zb[m4] - hi[m4]) / -dz[m4]
            relaxed[m4] = ratio[m4]
            target[m4] = UPPER
        # basics within tolerance outside a bound give negative ratios; both passes start at 0
        ratio = np.maximum(ratio, 0.0)
        relaxed = np.maximum(relaxed, 0.0)
        span = self.hi[ent] - self.lo[ent]
        flip = span if np.isfinite(span) else None
        if not np.isfinite(ratio).any():
            if flip is None:
                return None, -1, -1
            return flip, -1, -1
        if bland:
            best = ratio.min()
            ties = np.flatnonzero(ratio <= best + 1e-12)
            r = int(ties[np.argmin(self.basic[ties])])
        else:
            theta = relaxed.min()
            cand = np.flatnonzero(ratio <= theta)
            r = int(cand[np.argmax(np.abs(alpha[cand]))])
        step = ratio[r]
        if flip is not None and flip <= step:
            return flip, -1, -1
        return step, r, int(target[r])

    def _move(self, j, direction, step, alpha, leave, leave_state):
        basic = self.basic
        self.z[basic] -= direction * step * alpha
        self.z[j] += direction * step
        if leave < 0:
            self.state[j] = UPPER if direction > 0 else LOWER
            self.z[j] = self.hi[j] if direction > 0 else self.lo[j]
            return
        out = basic[leave]
        self.state[out] = leave_state
        self.z[out] = self.lo[out] if leave_state == LOWER else self.hi[out]
        basic[leave] = j
        self.state[j] = BASIC
        self.F.update(leave, alpha)

    def _diagnose(self) -> str:
        B = self.e.W[:, self.basic]
        s = np.linalg.svd(B, compute_uv=False) if B.size else np.ones(1)
        return (f"basis matrix is numerically singular: condition {s[0] / max(s[-1], 1e-300):.3e}, "
                f"smallest singular value {s[-1]:.3e}, iteration {self.iters}")

    def _infeasible(self, y) -> LpSolution:
        rows = [self.e.row_names[k] for k in np.flatnonzero(np.abs(y) > 1e-9)]
        return LpSolution("infeasible", iterations=self.iters, certificate=rows, basis=Basis(self.basic.copy(), self.state.copy()))

    def _optimal(self) -> LpSolution:
        e = self.e
        n = e.n
        zb = self.z[self.basic]
        # clip basics sitting within tolerance outside their bounds
        self.z[self.basic] = np.clip(zb, self.lo[self.basic], self.hi[self.basic])
        x = self.z[:n] * e.C
        y_s = self.F.btran(e.cost[self.basic])
        duals = y_s * e.R / e.obj_scale
        rc = e.c - duals @ e.A
        return LpSolution("optimal", x=x, objective=float(e.c @ x) + e.c0, duals=duals, reduced_costs=rc,
                          basis=Basis(self.basic.copy(), self.state.copy()), iterations=self.iters)


def solve_lp(inst, basis: Basis | None = None, tol: Tolerances = DEFAULT) -> LpSolution:
    """Solve the LP relaxation of ``inst`` (integrality marks are ignored)."""
    eng = LpEngine.from_instance(inst, tol)
    return eng.solve(inst.lb, inst.ub, basis)
