"""Nondominated filtering for minimization criteria."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

CRITERIA = ("cost", "ghg", "risk")


@dataclass
class ParetoPoint:
    cost: float  # kEUR/day
    ghg: float  # tCO2e/day
    risk: float
    lcoh: float  # EUR/kg
    eps_ghg: float = math.inf
    eps_risk: float = math.inf
    x: np.ndarray | None = field(default=None, repr=False)  # solution vector of the cell instance
    kpis: dict | None = field(default=None, repr=False)
    status: str = "optimal"

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.criteria):
            raise ValueError(f"non-finite criterion in {self.criteria}")

    @property
    def criteria(self) -> tuple[float, float, float]:
        return (self.cost, self.ghg, self.risk)


@dataclass
class ParetoFront:
    points: list[ParetoPoint]
    payoff: dict[str, dict[str, float]] = field(default_factory=dict)  # anchor -> criterion values
    eps_ghg: list[float] = field(default_factory=list)
    eps_risk: list[float] = field(default_factory=list)
    cells: dict[tuple[int, int], ParetoPoint | None] = field(default_factory=dict, repr=False)

    @property
    def utopia(self) -> tuple[float, ...]:
        return tuple(np.min(self.matrix(), axis=0)) if self.points else ()

    @property
    def nadir(self) -> tuple[float, ...]:
        return tuple(np.max(self.matrix(), axis=0)) if self.points else ()

    def matrix(self) -> np.ndarray:
        return np.array([p.criteria for p in self.points], float).reshape(-1, 3)

    def __len__(self) -> int:
        return len(self.points)


def _vec(p, digits: int | None = None) -> tuple[float, ...]:
    v = tuple(p.criteria) if hasattr(p, "criteria") else tuple(float(x) for x in p)
    if digits is not None:
        v = tuple(float(f"{x:.{digits - 1}e}") for x in v)
    return v


def dominates(a, b) -> bool:
    """``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a, b = _vec(a), _vec(b)
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def pareto_filter(points: list, digits: int | None = None) -> list:
    """Maximal nondominated subset ordered by (cost, ghg, risk); equal
    criterion vectors are coalesced to their first occurrence.

    ``digits`` compares criteria rounded to that many significant digits,
    which merges solver round-off (e.g. 5.275 vs 5.2749999999999)."""
    keys = [_vec(p, digits) for p in points]
    order = sorted(range(len(points)), key=lambda k: (keys[k], k))
    kept: list[int] = []
    seen: set = set()
    for k in order:
        if keys[k] in seen:
            continue
        # lexicographic order puts any dominator first
        if any(dominates(keys[q], keys[k]) for q in kept):
            continue
        kept.append(k)
        seen.add(keys[k])
    return [points[k] for k in kept]
