"""Invariant checks on a Scenario.  Violations are reported, never raised."""
from __future__ import annotations

from dataclasses import dataclass

from .bundle import expected_keys
from .schema import PARAMS
from .types import SET_FIELDS, Scenario

TOL_SHARE = 1e-9
TOL_TOURISM = 1e-3


@dataclass(frozen=True)
class Violation:
    rule: str
    message: str
    index: tuple = ()

    def __str__(self) -> str:
        return f"[{self.rule}] {self.message}"


class ValidationReport(list):
    """List of :class:`Violation`; empty means the scenario is valid."""

    @property
    def ok(self) -> bool:
        return not self

    def rules(self) -> set[str]:
        return {v.rule for v in self}


def _check_sets(s, out):
    for key, attr in SET_FIELDS.items():
        members = getattr(s.sets, attr)
        if not members:
            out.append(Violation("sets.nonempty", f"set {attr} is empty"))
        if len(set(members)) != len(members):
            out.append(Violation("sets.unique", f"set {attr} has duplicate identifiers"))
    if len(s.sets.years) != len(s.sets.periods):
        out.append(Violation("sets.years", "years must list one label per period"))
    for m in s.sets.months:
        if not 1 <= m <= 12:
            out.append(Violation("sets.months", f"month {m} outside 1..12", (m,)))
    for attr in ("storages", "stations"):
        for x in getattr(s.sets, attr):
            if x not in s.sets.forms:
                out.append(Violation("sets.form_link", f"{attr} technology '{x}' does not name a hydrogen form", (x,)))


def _check_complete(s, out):
    for spec in PARAMS:
        data = getattr(getattr(s, spec.group), spec.name)
        if not spec.index:
            if data is None:
                out.append(Violation("table.complete", f"{spec.name} is missing"))
            continue
        for k in expected_keys(spec, s.sets):
            if k not in data:
                out.append(Violation("table.complete", f"{spec.name} missing cell {k}", (spec.name, k)))
        extra = set(data) - set(expected_keys(spec, s.sets))
        for k in sorted(extra, key=str):
            out.append(Violation("mask.declared", f"{spec.name} references undeclared index {k}", (spec.name, k)))


def _fraction(out, rule, name, table):
    for k, v in table.items():
        if not 0.0 <= v <= 1.0:
            out.append(Violation(rule, f"{name} at {k} = {v} is not a fraction", (k,)))


def _check_demand(s, out):
    d, sets = s.demand, s.sets
    for t in sets.periods:
        total = sum(d.resident_share.get((g, t), 0.0) for g in sets.grids)
        if abs(total - 1.0) > TOL_SHARE:
            out.append(Violation("demand.tpop_sum", f"Tpop sum != 1 at t={t} (sum={total:.9g})", (t,)))
        season = sum(d.tourism_season_share.get((t, m), 0.0) for m in sets.months)
        if len(sets.months) == 12 and abs(season - 1.0) > TOL_SHARE:
            out.append(Violation("demand.season_sum", f"SFCtour sum != 1 at t={t} (sum={season:.9g})", (t,)))
        elif season > 1.0 + TOL_SHARE:
            out.append(Violation("demand.season_sum", f"SFCtour sum exceeds 1 at t={t}", (t,)))
    gsum = sum(d.tourism_grid_share.values())
    if abs(gsum - 1.0) > TOL_TOURISM:
        out.append(Violation("demand.gtour_sum", f"Gtour sum != 1 (sum={gsum:.6g})"))
    _fraction(out, "demand.fraction", "Tpop", d.resident_share)
    _fraction(out, "demand.fraction", "SFCtour", d.tourism_season_share)
    _fraction(out, "demand.fraction", "Gtour", d.tourism_grid_share)
    if d.kwh_per_toe <= 0:
        out.append(Violation("demand.positive", "Etoe must be > 0"))
    if d.h2_lhv <= 0:
        out.append(Violation("demand.positive", "FHV must be > 0"))
    if not 0.0 < d.substitution_rate < 1.0:
        out.append(Violation("demand.rsub", "Rsub must lie in (0, 1)"))
    for name in ("fuel_residents", "fuel_goods", "fuel_tourism"):
        if getattr(d, name) < 0:
            out.append(Violation("demand.positive", f"{name} must be >= 0"))
    for name in ("resident_growth", "tourism_growth"):
        for t, v in getattr(d, name).items():
            if v < 0:
                out.append(Violation("demand.positive", f"{name} negative at t={t}", (t,)))
    for g in sets.grids:
        active = any(d.resident_share.get((g, t), 0) > 0 for t in sets.periods) or d.tourism_grid_share.get(g, 0) > 0
        if active and not s.geo.demand_grid.get(g, 1):
            out.append(Violation("geo.demand_grid", f"grid {g} has demand but is not a demand grid", (g,)))


def _check_energy(s, out):
    en, sets = s.energy, s.sets
    _fraction(out, "energy.capacity_factor", "PVCF", en.pv_capacity_factor)
    _fraction(out, "energy.capacity_factor", "WindCF", en.wind_capacity_factor)
    for m in sets.months:
        nd = en.month_days.get(m)
        if nd not in (28, 29, 30, 31):
            out.append(Violation("energy.month_days", f"Nd[{m}] = {nd} is not a month length", (m,)))
    hours = [en.month_hours.get(m, 0.0) for m in sets.months]
    if len(sets.months) == 12:
        if sum(hours) not in (8760, 8784):
            out.append(Violation("energy.month_hours", f"sum of Mh = {sum(hours)} is not 8760 or 8784"))
    else:
        for m in sets.months:
            if en.month_hours.get(m) != 24 * en.month_days.get(m, 0):
                out.append(Violation("energy.month_hours", f"Mh[{m}] != 24 * Nd[{m}]", (m,)))
    for e in sets.sources:
        prev = None
        for t in sets.periods:
            v = en.capacity_growth.get((t, e), 0.0)
            if v < 0:
                out.append(Violation("energy.eco", f"eCo[{t},{e}] is negative", (t, e)))
            if prev is not None and v < prev:
                out.append(Violation("energy.eco", f"eCo decreases at t={t} for {e}", (t, e)))
            prev = v
    for k, v in en.installable_power.items():
        if v < 0:
            out.append(Violation("energy.positive", f"installable power negative at {k}", k))
    for k, v in en.electricity_use.items():
        if v <= 0:
            out.append(Violation("energy.gamma", f"electricity use must be > 0 at {k}", k))
    for k, v in en.electricity_price.items():
        if v <= 0:
            out.append(Violation("tech.positive", f"electricity price must be > 0 at {k}", k))
    for k, v in en.electricity_ghg.items():
        if v < 0:
            out.append(Violation("tech.nonnegative", f"electricity GHG factor negative at {k}", (k,)))
    if en.consumption_margin < 0:
        out.append(Violation("energy.margin", "er must be >= 0"))
    for name in ("pv_allowed", "wind_allowed"):
        for g, v in getattr(en, name).items():
            if v not in (0, 1):
                out.append(Violation("mask.flag", f"{name}[{g}] must be 0 or 1", (g,)))


def _check_water(s, out):
    w = s.water
    if abs(w.surface_share + w.ground_share - 1.0) > 1e-12:
        out.append(Violation("water.shares", "surfaceShare + groundShare != 1"))
    for name in ("surface_vulnerability", "ground_vulnerability"):
        for g, v in getattr(w, name).items():
            if v not in (1, 2, 3):
                out.append(Violation("water.vulnerability", f"{name}[{g}] = {v} not in 1..3", (g,)))
    for k, v in w.season_deficit.items():
        if v not in (1, 2):
            out.append(Violation("water.vulnerability", f"VulSaison{k} = {v} not in {{1, 2}}", k))
    for name in ("min_withdrawal_rate", "max_withdrawal_rate"):
        if not 0.0 <= getattr(w, name) <= 1.0:
            out.append(Violation("water.fraction", f"{name} is not a fraction"))
    if w.min_withdrawal_rate > w.max_withdrawal_rate:
        out.append(Violation("water.bounds", "minCW exceeds maxCW"))
    if w.vulnerability_min > w.vulnerability_max:
        out.append(Violation("water.bounds", "WaterVulMin exceeds WaterVulMax"))
    if w.water_per_kg <= 0 or w.water_price <= 0:
        out.append(Violation("tech.positive", "ELWUC and water price must be > 0"))
    for t, v in w.potable_water.items():
        if v <= 0:
            out.append(Violation("tech.positive", f"CleanWater[{t}] must be > 0", (t,)))


_POSITIVE_TECH = (
    "electrolyzer_power", "electrolyzer_capex", "electrolyzer_opex", "stack_lifetime",
    "storage_capacity", "storage_capex", "storage_opex",
    "station_capacity", "station_capex", "station_opex",
    "truck_capacity", "truck_capex", "truck_speed", "truck_availability",
    "retrofit_capex", "retrofit_maintenance_km", "maintenance_km", "years_per_period",
)
_NONNEGATIVE_TECH = (
    "production_ghg_unit", "production_risk_unit", "storage_ghg_unit", "storage_ghg_kg",
    "storage_risk_unit", "truck_ghg_km", "truck_risk_unit", "retrofit_ghg_km",
    "retrofit_fuel_cost_km", "fuel_cost_km", "general_cost_day", "handling_time",
    "conversion_capex", "conversion_opex", "conversion_energy", "min_hours",
)


def _check_tech(s, out):
    tech, sets = s.tech, s.sets
    for name in _POSITIVE_TECH:
        for k, v in getattr(tech, name).items():
            if not v > 0:
                out.append(Violation("tech.positive", f"{name} must be > 0 at {k}", (name, k)))
    for name in _NONNEGATIVE_TECH:
        for k, v in getattr(tech, name).items():
            if v < 0:
                out.append(Violation("tech.nonnegative", f"{name} must be >= 0 at {k}", (name, k)))
    for name in ("driver_wage", "fcev_consumption", "truck_lifetime"):
        if not getattr(tech, name) > 0:
            out.append(Violation("tech.positive", f"{name} must be > 0"))
    if not 0.0 <= tech.stack_share <= 1.0:
        out.append(Violation("tech.fraction", "stack replacement share must be a fraction"))
    if tech.discount_rate < 0 or tech.inflation_rate < 0:
        out.append(Violation("tech.nonnegative", "discount and inflation rates must be >= 0"))
    min_month_hours = min(s.energy.month_hours[m] for m in sets.months)
    short = min(sets.months, key=lambda m: s.energy.month_hours[m])
    for k, hi in tech.max_hours.items():
        lo = tech.min_hours[k]
        if lo > hi:
            out.append(Violation("tech.elcf", f"ELCFmin exceeds ELCFmax at {k}", k))
        if hi > min_month_hours:
            out.append(Violation(
                "tech.elcf", f"ELCFmax exceeds month hours at {k}: {hi} > Mh[{short}] = {min_month_hours}", k))
    for (a, b), v in tech.distance.items():
        if a == b and v != 0:
            out.append(Violation("tech.distance", f"AD[{a},{a}] must be 0", (a, b)))
        if a != b:
            if v <= 0:
                out.append(Violation("tech.distance", f"AD[{a},{b}] must be > 0", (a, b)))
            if tech.distance.get((b, a)) != v:
                out.append(Violation("tech.distance", f"AD not symmetric at ({a},{b})", (a, b)))
    for k, v in tech.route_enabled.items():
        if v not in (0, 1):
            out.append(Violation("mask.flag", f"route_enabled{k} must be 0 or 1", k))


def _check_geo(s, out):
    for name in ("central_grid", "central_only_size", "export_ban", "demand_grid", "production_ban"):
        for k, v in getattr(s.geo, name).items():
            if v not in (0, 1):
                out.append(Violation("mask.flag", f"{name}[{k}] must be 0 or 1", (k,)))


def _check_options(s, out):
    o = s.options
    if o.storage_autonomy_days < 0:
        out.append(Violation("options", "storage autonomy must be >= 0"))
    if o.heating_value_mode not in ("divide", "multiply"):
        out.append(Violation("options", f"unknown heating value mode {o.heating_value_mode}"))
    if o.water not in ("off", "on"):
        try:
            rate = float(o.water)
        except ValueError:
            rate = -1
        if not 0 < rate <= 100:
            out.append(Violation("options", f"water cap '{o.water}' is not a percentage"))


def validate_scenario(s: Scenario) -> ValidationReport:
    """Check every data invariant; returns the (possibly empty) list of violations."""
    out = ValidationReport()
    _check_sets(s, out)
    if any(v.rule == "sets.nonempty" for v in out):
        return out
    _check_complete(s, out)
    if any(v.rule == "table.complete" for v in out):
        return out
    _check_demand(s, out)
    _check_energy(s, out)
    _check_water(s, out)
    _check_tech(s, out)
    _check_geo(s, out)
    _check_options(s, out)
    return out
