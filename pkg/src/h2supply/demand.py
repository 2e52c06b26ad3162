"""Monthly hydrogen demand per grid and retrofit-truck self-consumption.

Fuel consumptions are annual figures in ktoe.  They are converted to kg of
hydrogen per day: ktoe -> toe (x1000) -> kWh (x Etoe) -> substituted share
(x Rsub) -> kg (/ LHV) -> per day (/365).  The tourism term is a monthly share
of the annual figure, so it is scaled by 12 to express it as an annualised rate
for that month; its mean over a full year then equals the annual tourism fuel.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .scenario.types import Scenario

DAYS_PER_YEAR = 365.0


def _check_member(s: Scenario, key: str, value) -> None:
    if value not in s.sets.members(key):
        name = {"g": "grids", "t": "periods", "m": "months"}[key]
        raise IndexError(f"{value!r} is not a member of set {name}")


def kg_per_ktoe_day(s: Scenario) -> float:
    """Conversion factor from ktoe/yr of fuel to kg/day of substituted hydrogen."""
    d = s.demand
    energy = 1000.0 * d.kwh_per_toe * d.substitution_rate
    if s.options.heating_value_mode == "multiply":
        return energy * d.h2_lhv / DAYS_PER_YEAR
    return energy / d.h2_lhv / DAYS_PER_YEAR


def resident_term(s: Scenario, g, t) -> float:
    d = s.demand
    fuel = (d.fuel_residents + d.fuel_goods) * d.resident_growth[t]
    return fuel * d.resident_share[(g, t)] * kg_per_ktoe_day(s)


def tourism_term(s: Scenario, g, t, m) -> float:
    d = s.demand
    fuel = d.fuel_tourism * d.tourism_growth[t]
    return 12.0 * fuel * d.tourism_season_share[(t, m)] * d.tourism_grid_share[g] * kg_per_ktoe_day(s)


def hydrogen_demand(s: Scenario, g, t, m) -> float:
    """Hydrogen demand of grid ``g`` in period ``t``, month ``m`` (kg/day)."""
    _check_member(s, "g", g)
    _check_member(s, "t", t)
    _check_member(s, "m", m)
    return resident_term(s, g, t) + tourism_term(s, g, t, m)


@dataclass(frozen=True)
class DemandSurface:
    grids: tuple
    periods: tuple
    months: tuple
    values: np.ndarray  # kg/day, shape (g, t, m)
    month_days: np.ndarray  # shape (m,)

    def at(self, g, t, m) -> float:
        return float(self.values[self.grids.index(g), self.periods.index(t), self.months.index(m)])

    def annual_mean(self) -> np.ndarray:
        """Day-unweighted mean over months, shape (g, t)."""
        return self.values.mean(axis=2)

    def period_total(self) -> np.ndarray:
        """Sum over grids of the monthly mean, per period (kg/day)."""
        return self.annual_mean().sum(axis=0)

    def DT(self) -> np.ndarray:
        """Total demand per (t, m) in kg/day, the base of the LCOH denominator."""
        return self.values.sum(axis=0)

    def peak(self) -> np.ndarray:
        """Monthly peak per (g, t)."""
        return self.values.max(axis=2)

    def rows(self):
        for a, g in enumerate(self.grids):
            for b, t in enumerate(self.periods):
                for c, m in enumerate(self.months):
                    yield g, t, m, float(self.values[a, b, c])


def demand_table(s: Scenario) -> DemandSurface:
    sets = s.sets
    vals = np.array([[[hydrogen_demand(s, g, t, m) for m in sets.months]
                      for t in sets.periods] for g in sets.grids], dtype=float)
    days = np.array([s.energy.month_days[m] for m in sets.months], dtype=float)
    return DemandSurface(sets.grids, sets.periods, sets.months, vals, days)


def write_demand_csv(surface: DemandSurface, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["g", "t", "m", "kg_per_day"])
        for g, t, m, v in surface.rows():
            w.writerow([g, t, m, repr(v)])
    return path


def retrofit_consumption(trips: float, distance: float, fcev_consumption: float) -> float:
    """Hydrogen burnt by retrofitted trucks doing ``trips`` round trips a day (kg/day)."""
    if trips < 0 or distance < 0 or fcev_consumption < 0:
        raise ValueError("retrofit_consumption inputs must be non-negative")
    return trips * 2.0 * distance * fcev_consumption / 100.0
