"""Numerical tolerances of the in-repo LP and MILP solvers, kept in one place."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    primal: float = 1e-9  # bound violation accepted on the scaled problem
    dual: float = 1e-9  # reduced-cost threshold for an improving column
    pivot: float = 1e-9  # smallest usable pivot element
    harris: float = 1e-10  # bound relaxation of the two-pass ratio test
    final_primal: float = 1e-7  # post-solve feasibility check, scaled rows
    refactor_every: int = 50
    stall_limit: int = 40  # consecutive degenerate pivots before Bland's rule
    max_condition: float = 1e14
    integrality: float = 1e-6
    feasibility: float = 1e-6  # unscaled row check of MILP solutions


DEFAULT = Tolerances()
