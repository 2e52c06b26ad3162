"""Renewable energy availability and water vulnerability quantities."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .scenario.types import Scenario

# months whose precipitation deficit index may exceed 1 in shipped datasets
SUMMER_MONTHS = (5, 6, 7, 8, 9)


def capacity_factor(s: Scenario, e: str, m: int) -> float:
    """Monthly capacity factor of source ``e``; zero for grid imports."""
    if e == "PV":
        return s.energy.pv_capacity_factor[m]
    if e == "Wind":
        return s.energy.wind_capacity_factor[m]
    return 0.0


def source_allowed(s: Scenario, g, e: str) -> bool:
    if e == "PV":
        return bool(s.energy.pv_allowed[g])
    if e == "Wind":
        return bool(s.energy.wind_allowed[g])
    return False


def availability_per_kw(s: Scenario, t, m, e) -> float:
    """kWh/day delivered by 1 kW of source ``e`` in month ``m`` of period ``t``."""
    en = s.energy
    return en.month_hours[m] * capacity_factor(s, e, m) / en.month_days[m] * en.capacity_growth[(t, e)]


def renewable_availability(s: Scenario, g, t, m, e, installed_kw: float | None = None) -> float:
    """Energy available from source ``e`` in grid ``g`` (kWh/day).

    ``installed_kw`` defaults to the installable capacity of the grid.
    """
    for key, value in (("g", g), ("t", t), ("m", m), ("e", e)):
        if value not in s.sets.members(key):
            raise IndexError(f"{value!r} is not a member of the {key} index set")
    if not source_allowed(s, g, e):
        return 0.0
    kw = s.energy.installable_power[(g, e)] if installed_kw is None else installed_kw
    return kw * availability_per_kw(s, t, m, e)


def total_availability(s: Scenario, g, t, m) -> float:
    return sum(renewable_availability(s, g, t, m, e) for e in s.sets.sources)


def water_vulnerability(s: Scenario, g, m) -> tuple[float, float]:
    """(intermediate, final) vulnerability index of grid ``g`` in month ``m``."""
    w = s.water
    inter = w.surface_share * w.surface_vulnerability[g] + w.ground_share * w.ground_vulnerability[g]
    # the shares are decimal fractions; strip the binary noise so 0.8*2+0.2*3 reads 2.2
    inter = round(inter, 12)
    return inter, round(inter * w.season_deficit[(g, m)], 12)


def water_consumption(production_kg_day: float, litres_per_kg: float) -> float:
    """Water drawn for a production rate (m3/day)."""
    if production_kg_day < 0 or litres_per_kg < 0:
        raise ValueError("water_consumption inputs must be non-negative")
    return production_kg_day * litres_per_kg / 1000.0


def water_cap_rate(s: Scenario) -> float | None:
    rate = s.options.water_cap_rate
    if rate is not None and math.isnan(rate):
        return s.water.max_withdrawal_rate
    return rate


def water_bounds(s: Scenario, g, t, m) -> tuple[float, float]:
    """Bounds on indexed monthly consumption WCV (m3 x index); (0, inf) when unrestricted."""
    rate = water_cap_rate(s)
    if rate is None:
        return 0.0, math.inf
    w = s.water
    lo = w.vulnerability_min * w.potable_water[t] * w.min_withdrawal_rate * 1e6
    hi = w.vulnerability_max * w.potable_water[t] * rate * 1e6
    return lo, hi


def indexed_consumption(s: Scenario, g, m, cons_m3_day: float) -> float:
    """WCV for a daily consumption in grid ``g`` and month ``m``."""
    return cons_m3_day * s.energy.month_days[m] * water_vulnerability(s, g, m)[1]


def water_cost(s: Scenario, cons: dict) -> float:
    """Average water cost (EUR/day) of a period from daily consumption per (g, m)."""
    days = {m: s.energy.month_days[m] for m in s.sets.months}
    total_days = sum(days.values())
    return s.water.water_price * sum(v * days[m] for (g, m), v in cons.items()) / total_days


@dataclass(frozen=True)
class WaterProfileRow:
    g: str
    t: int
    m: int
    intermediate: float
    final: float
    lo: float
    hi: float


def water_profile(s: Scenario) -> list[WaterProfileRow]:
    out = []
    for g in s.sets.grids:
        for t in s.sets.periods:
            for m in s.sets.months:
                inter, final = water_vulnerability(s, g, m)
                lo, hi = water_bounds(s, g, t, m)
                out.append(WaterProfileRow(g, t, m, inter, final, lo, hi))
    return out


def write_water_profile(s: Scenario, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["g", "t", "m", "watervul", "watervul_sn", "wcv_lo", "wcv_hi"])
        for r in water_profile(s):
            w.writerow([r.g, r.t, r.m, repr(r.intermediate), repr(r.final), repr(r.lo), repr(r.hi)])
    return path


def write_energy_availability(s: Scenario, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["g", "t", "m", "e", "kwh_per_day"])
        for g in s.sets.grids:
            for t in s.sets.periods:
                for m in s.sets.months:
                    for e in s.sets.sources:
                        w.writerow([g, t, m, e, repr(renewable_availability(s, g, t, m, e))])
    return path
