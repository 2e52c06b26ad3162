"""Key indicators evaluated from an instance and a solution vector."""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .instance import MilpInstance
from .objectives import CAPEX_COMPONENTS, SUBSYSTEM


def _shares(parts: dict[str, float]) -> dict[str, float]:
    total = sum(parts.values())
    return {k: (v / total if total else 0.0) for k, v in parts.items()}


def _by_subsystem(breakdown: dict[str, float]) -> dict[str, float]:
    out = {"production": 0.0, "storage": 0.0, "transport": 0.0}
    for name, value in breakdown.items():
        out[SUBSYSTEM[name]] += value
    return out


def objective_values(inst: MilpInstance, x: np.ndarray) -> dict[str, float]:
    return {k: e.value(x) for k, e in inst.meta["expressions"].items()}


def lcoh(inst: MilpInstance, x: np.ndarray) -> float:
    """Discounted cost over discounted delivered kg (EUR/kg)."""
    cost_eur = inst.meta["expressions"]["cost"].value(x) * 1000.0 * inst.meta["total_days"]
    kg = inst.meta["delivered"].value(x)
    return cost_eur / kg if kg > 0 else float("nan")


def family_values(inst: MilpInstance, x: np.ndarray, name: str) -> dict[tuple, float]:
    return {inst.variables.key(k)[1]: float(x[k]) for k in inst.variables.family(name)}


def water_withdrawal(inst: MilpInstance, x: np.ndarray) -> dict[tuple, float]:
    """Daily water withdrawal (m3/day) per (g, t, m)."""
    return family_values(inst, x, "WATERCONS")


def operating_hours(inst: MilpInstance, x: np.ndarray) -> float:
    """Mean monthly full-load hours of the installed electrolyzers."""
    ctx = inst.meta["context"]
    s = ctx.s
    hours = units = 0.0
    pr = family_values(inst, x, "PR")
    for (p, j, i, g, t, m), kg in pr.items():
        hours += kg * s.energy.electricity_use[(p, j)] / s.tech.electrolyzer_power[(p, j, i)] * ctx.nd(m)
    for (p, j, i, g, t), n in family_values(inst, x, "NP").items():
        units += n * len(s.sets.months)
    return hours / units if units > 0 else 0.0


def evaluate(inst: MilpInstance, x: np.ndarray) -> dict:
    """Indicator record: TDC, LCOH, GHG, risk, breakdowns and water use."""
    exprs = inst.meta["expressions"]
    cost = exprs["cost"].breakdown(x)
    ghg = exprs["ghg"].breakdown(x)
    risk = exprs["risk"].breakdown(x)
    capex = sum(cost[k] for k in CAPEX_COMPONENTS)
    water = defaultdict(float)
    for (g, t, m), v in water_withdrawal(inst, x).items():
        water[g] += v * inst.meta["context"].nd(m)
    return {
        "scenario": inst.meta["scenario"],
        "objective": inst.objective,
        "tdc_keur_per_day": exprs["cost"].value(x),
        "lcoh_eur_per_kg": lcoh(inst, x),
        "ghg_t_per_day": exprs["ghg"].value(x),
        "risk": exprs["risk"].value(x),
        "capex_share": capex / exprs["cost"].value(x) if exprs["cost"].value(x) else 0.0,
        "cost_breakdown": cost,
        "cost_shares": _shares(_by_subsystem(cost)),
        "ghg_shares": _shares(_by_subsystem(ghg)),
        "risk_shares": _shares(_by_subsystem(risk)),
        "transport_ghg_t_per_day": ghg["transport_ghg"],
        "delivered_kg": inst.meta["delivered"].value(x),
        "electrolyzer_hours_per_month": operating_hours(inst, x),
        "water_m3_by_grid": dict(sorted(water.items())),
        "eps": dict(inst.eps),
    }
