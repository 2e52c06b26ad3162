"""Solver-agnostic MILP container and the builder used to fill it."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

INTEGER_FAMILIES = frozenset({"NTUGRID", "EPSILON", "XE", "NP", "IP", "NS", "NSnew", "NFS", "NFSnew"})
SENSES = ("L", "E", "G")  # <=, =, >=


class ModelError(Exception):
    pass


def label(name: str, subs: tuple) -> str:
    return f"{name}[{','.join(map(str, subs))}]" if subs else name


class VariableIndex:
    """Dense numbering of (family, subscripts) pairs."""

    def __init__(self):
        self._keys: list[tuple[str, tuple]] = []
        self._pos: dict[tuple[str, tuple], int] = {}

    def add(self, name: str, subs: tuple) -> int:
        key = (name, tuple(subs))
        if key in self._pos:
            raise ModelError(f"duplicate variable {label(*key)}")
        self._pos[key] = len(self._keys)
        self._keys.append(key)
        return self._pos[key]

    def index(self, name: str, subs: tuple) -> int:
        return self._pos[(name, tuple(subs))]

    def get(self, name: str, subs: tuple, default=None):
        return self._pos.get((name, tuple(subs)), default)

    def key(self, idx: int) -> tuple[str, tuple]:
        return self._keys[idx]

    def label(self, idx: int) -> str:
        return label(*self._keys[idx])

    def family(self, name: str) -> list[int]:
        return [k for k, (n, _) in enumerate(self._keys) if n == name]

    def families(self) -> list[str]:
        return list(dict.fromkeys(n for n, _ in self._keys))

    def __contains__(self, key) -> bool:
        return (key[0], tuple(key[1])) in self._pos

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self):
        return iter(self._keys)


@dataclass
class Expression:
    """Linear expression split into named components (coefficient vectors)."""
    components: dict[str, np.ndarray]
    constant: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return sum(self.components.values())

    def value(self, x: np.ndarray) -> float:
        return float(self.vector @ x) + self.constant

    def breakdown(self, x: np.ndarray) -> dict[str, float]:
        return {k: float(v @ x) for k, v in self.components.items()}


@dataclass
class MilpInstance:
    """min c.x + c0  s.t.  rows (A x  sense  rhs), lb <= x <= ub, x_j integer where marked."""
    variables: VariableIndex
    lb: np.ndarray
    ub: np.ndarray
    integer: np.ndarray
    A: sp.csr_matrix
    sense: np.ndarray  # array of "L" / "E" / "G"
    rhs: np.ndarray
    row_names: list[str]
    c: np.ndarray
    c0: float = 0.0
    objective: str | None = None
    eps: dict[str, float] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.lb)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    def row_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.where(self.sense == "L", -np.inf, self.rhs)
        hi = np.where(self.sense == "G", np.inf, self.rhs)
        return lo.astype(float), hi.astype(float)

    def objective_value(self, x: np.ndarray) -> float:
        return float(self.c @ x) + self.c0

    def violations(self, x: np.ndarray) -> np.ndarray:
        """Per-row violation divided by the row's largest |coefficient|."""
        act = self.A @ x
        lo, hi = self.row_bounds()
        viol = np.maximum(np.maximum(lo - act, act - hi), 0.0)
        scale = np.maximum(abs(self.A).max(axis=1).toarray().ravel(), 1e-300) if self.m else np.ones(0)
        return viol / scale

    def bound_violations(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(np.maximum(self.lb - x, x - self.ub), 0.0)

    def check(self) -> None:
        """Structural invariants; raises ModelError."""
        if not np.all(np.isfinite(self.A.data)):
            raise ModelError("non-finite constraint coefficient")
        if not np.all(np.isfinite(self.c)) or not math.isfinite(self.c0):
            raise ModelError("non-finite objective coefficient")
        if np.any(np.isnan(self.rhs)):
            raise ModelError("NaN right-hand side")
        counts = np.diff(self.A.indptr)
        if np.any(counts == 0):
            empty = [self.row_names[k] for k in np.flatnonzero(counts == 0)[:5]]
            raise ModelError(f"empty rows: {empty}")
        if self.A.shape[1] != self.n:
            raise ModelError("column count does not match the variable catalog")
        if np.any(self.lb > self.ub):
            bad = [self.variables.label(k) for k in np.flatnonzero(self.lb > self.ub)[:5]]
            raise ModelError(f"crossed bounds on {bad}")
        marked = {self.variables.key(k)[0] for k in np.flatnonzero(self.integer)}
        if not marked <= INTEGER_FAMILIES:
            raise ModelError(f"unexpected integer families {sorted(marked - INTEGER_FAMILIES)}")

    def copy(self) -> "MilpInstance":
        return MilpInstance(self.variables, self.lb.copy(), self.ub.copy(), self.integer.copy(),
                            self.A.copy(), self.sense.copy(), self.rhs.copy(), list(self.row_names),
                            self.c.copy(), self.c0, self.objective, dict(self.eps), dict(self.meta))

    def relaxed(self) -> "MilpInstance":
        out = self.copy()
        out.integer = np.zeros(self.n, dtype=bool)
        return out

    def to_json(self) -> dict:
        """Structured dump for diffing two builds."""
        A = self.A.tocsr()
        rows = []
        for k in range(self.m):
            lo, hi = A.indptr[k], A.indptr[k + 1]
            rows.append({
                "name": self.row_names[k],
                "sense": str(self.sense[k]),
                "rhs": _num(self.rhs[k]),
                "terms": [[self.variables.label(int(j)), _num(v)] for j, v in zip(A.indices[lo:hi], A.data[lo:hi])],
            })
        return {
            "objective": self.objective,
            "eps": {k: _num(v) for k, v in self.eps.items()},
            "constant": _num(self.c0),
            "variables": [
                {"name": self.variables.label(j), "lb": _num(self.lb[j]), "ub": _num(self.ub[j]),
                 "integer": bool(self.integer[j]), "cost": _num(self.c[j])}
                for j in range(self.n)
            ],
            "rows": rows,
        }

    def dump_json(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_json(), indent=1) + "\n")
        return path


def _num(v):
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


class InstanceBuilder:
    """Accumulates variables and rows; ``freeze`` produces a MilpInstance."""

    def __init__(self):
        self.vars = VariableIndex()
        self._lb: list[float] = []
        self._ub: list[float] = []
        self._int: list[bool] = []
        self._ri: list[int] = []
        self._ci: list[int] = []
        self._vals: list[float] = []
        self._sense: list[str] = []
        self._rhs: list[float] = []
        self.row_names: list[str] = []
        self.objective: str | None = None
        self.c: np.ndarray | None = None
        self.c0 = 0.0
        self.eps: dict[str, float] = {}
        self.meta: dict = {}

    def var(self, name: str, subs: tuple, lb: float = 0.0, ub: float = math.inf, integer: bool = False) -> int:
        idx = self.vars.add(name, subs)
        self._lb.append(lb)
        self._ub.append(ub)
        self._int.append(integer)
        return idx

    def v(self, name: str, *subs) -> int:
        return self.vars.index(name, subs)

    def has(self, name: str, *subs) -> bool:
        return (name, subs) in self.vars

    def set_ub(self, idx: int, ub: float) -> None:
        self._ub[idx] = ub

    def ub(self, idx: int) -> float:
        return self._ub[idx]

    def row(self, terms, sense: str, rhs: float, name: str) -> int | None:
        """Add a row; ``terms`` is an iterable of (index, coefficient).  Zero terms
        are dropped and duplicate indices summed.  Returns the row index or None
        when the row is empty (then it must be trivially satisfied)."""
        acc: dict[int, float] = {}
        for j, a in terms:
            if a != 0.0:
                acc[j] = acc.get(j, 0.0) + a
        acc = {j: a for j, a in acc.items() if a != 0.0}
        if sense not in SENSES:
            raise ModelError(f"bad row sense {sense!r}")
        if not acc:
            ok = (sense == "L" and rhs >= 0) or (sense == "G" and rhs <= 0) or (sense == "E" and rhs == 0)
            if not ok:
                raise ModelError(f"row {name} has no variables but requires {sense} {rhs}")
            return None
        k = len(self._rhs)
        for j in sorted(acc):
            self._ri.append(k)
            self._ci.append(j)
            self._vals.append(acc[j])
        self._sense.append(sense)
        self._rhs.append(float(rhs))
        self.row_names.append(name)
        return k

    @property
    def n(self) -> int:
        return len(self._lb)

    def freeze(self) -> MilpInstance:
        n, m = self.n, len(self._rhs)
        A = sp.csr_matrix((self._vals, (self._ri, self._ci)), shape=(m, n))
        A.sort_indices()
        c = self.c if self.c is not None else np.zeros(n)
        inst = MilpInstance(
            variables=self.vars, lb=np.array(self._lb, float), ub=np.array(self._ub, float),
            integer=np.array(self._int, bool), A=A, sense=np.array(self._sense, dtype="<U1"),
            rhs=np.array(self._rhs, float), row_names=list(self.row_names), c=np.asarray(c, float),
            c0=self.c0, objective=self.objective, eps=dict(self.eps), meta=dict(self.meta),
        )
        return inst
