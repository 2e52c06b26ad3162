"""Back-solving fuel totals from a published demand total."""
from __future__ import annotations

import dataclasses

from .types import Scenario


def calibrate_demand_totals(s: Scenario, target_total: float, period) -> Scenario:
    """Scale the three fuel totals jointly so that the grid sum of the monthly
    mean demand in ``period`` equals ``target_total`` (kg/day)."""
    from ..demand import hydrogen_demand

    if not target_total > 0:
        raise ValueError("target total must be > 0")
    if period not in s.sets.periods:
        raise IndexError(f"{period!r} is not a member of set periods")
    d = s.demand
    if d.fuel_residents + d.fuel_goods + d.fuel_tourism <= 0:
        raise ValueError("cannot calibrate from zero fuel data")
    months = s.sets.months
    current = sum(hydrogen_demand(s, g, period, m) for g in s.sets.grids for m in months) / len(months)
    if current <= 0:
        raise ValueError("cannot calibrate from zero fuel data")
    k = target_total / current
    if k == 1.0:
        return s
    demand = dataclasses.replace(
        d, fuel_residents=d.fuel_residents * k, fuel_goods=d.fuel_goods * k,
        fuel_tourism=d.fuel_tourism * k)
    return dataclasses.replace(s, demand=demand)
