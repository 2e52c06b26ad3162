"""Parameter schema shared by the bundle loader, writer and validator.

Each table line in a bundle file reads ``name idx... value`` (tab or blank
separated).  The schema fixes, per parameter, which file holds it, which index
sets it is keyed by and the default used when it is omitted.
"""
from __future__ import annotations

import calendar
from dataclasses import dataclass
from typing import Any, Callable

from .types import DemandParams, EnergyParams, GeographyMasks, Sets, TechnoEconomics, WaterParams

REQUIRED = object()


@dataclass(frozen=True)
class ParamSpec:
    name: str
    file: str
    group: str
    index: tuple[str, ...]
    default: Any = REQUIRED
    integral: bool = False

    @property
    def required(self) -> bool:
        return self.default is REQUIRED

    def default_for(self, sets: Sets, key) -> float:
        if callable(self.default):
            return self.default(sets, key)
        return self.default


def _month_days(sets: Sets, m) -> int:
    return calendar.monthrange(2025, m)[1]


def _month_hours(sets: Sets, m) -> float:
    return 24.0 * _month_days(sets, m)


GROUPS: dict[str, type] = {
    "demand": DemandParams,
    "energy": EnergyParams,
    "water": WaterParams,
    "tech": TechnoEconomics,
    "geo": GeographyMasks,
}

_P = ParamSpec
PARAMS: tuple[ParamSpec, ...] = (
    # demand.tsv
    _P("fuel_residents", "demand.tsv", "demand", ()),
    _P("fuel_goods", "demand.tsv", "demand", ()),
    _P("fuel_tourism", "demand.tsv", "demand", ()),
    _P("resident_share", "demand.tsv", "demand", ("g", "t")),
    _P("tourism_season_share", "demand.tsv", "demand", ("t", "m")),
    _P("tourism_grid_share", "demand.tsv", "demand", ("g",)),
    _P("resident_growth", "demand.tsv", "demand", ("t",), 1.0),
    _P("tourism_growth", "demand.tsv", "demand", ("t",), 1.0),
    _P("kwh_per_toe", "demand.tsv", "demand", (), 11630.0),
    _P("h2_lhv", "demand.tsv", "demand", (), 33.33),
    _P("substitution_rate", "demand.tsv", "demand", (), 0.025),
    # energy.tsv
    _P("installable_power", "energy.tsv", "energy", ("g", "e")),
    _P("pv_capacity_factor", "energy.tsv", "energy", ("m",)),
    _P("wind_capacity_factor", "energy.tsv", "energy", ("m",)),
    _P("month_hours", "energy.tsv", "energy", ("m",), _month_hours),
    _P("month_days", "energy.tsv", "energy", ("m",), _month_days, integral=True),
    _P("capacity_growth", "energy.tsv", "energy", ("t", "e"), 1.0),
    _P("consumption_margin", "energy.tsv", "energy", (), 0.0),
    _P("electricity_use", "energy.tsv", "energy", ("p", "j")),
    _P("pv_allowed", "energy.tsv", "energy", ("g",), 1, integral=True),
    _P("wind_allowed", "energy.tsv", "energy", ("g",), 1, integral=True),
    _P("electricity_price", "energy.tsv", "energy", ("e", "t")),
    _P("electricity_ghg", "energy.tsv", "energy", ("e",), 0.0),
    # water.tsv
    _P("surface_vulnerability", "water.tsv", "water", ("g",), integral=True),
    _P("ground_vulnerability", "water.tsv", "water", ("g",), integral=True),
    _P("season_deficit", "water.tsv", "water", ("g", "m"), integral=True),
    _P("potable_water", "water.tsv", "water", ("t",), 50.0),
    _P("surface_share", "water.tsv", "water", (), 0.8),
    _P("ground_share", "water.tsv", "water", (), 0.2),
    _P("water_per_kg", "water.tsv", "water", (), 9.0),
    _P("min_withdrawal_rate", "water.tsv", "water", (), 0.0),
    _P("max_withdrawal_rate", "water.tsv", "water", (), 0.001),
    _P("vulnerability_min", "water.tsv", "water", (), 1.0),
    _P("vulnerability_max", "water.tsv", "water", (), 5.0),
    _P("water_price", "water.tsv", "water", (), 2.18),
    # tech_production.tsv
    _P("electrolyzer_power", "tech_production.tsv", "tech", ("p", "j", "i")),
    _P("electrolyzer_capex", "tech_production.tsv", "tech", ("p", "j", "i")),
    _P("electrolyzer_opex", "tech_production.tsv", "tech", ("p", "j", "i")),
    _P("min_hours", "tech_production.tsv", "tech", ("p", "j", "i")),
    _P("max_hours", "tech_production.tsv", "tech", ("p", "j", "i")),
    _P("stack_lifetime", "tech_production.tsv", "tech", ("p",)),
    _P("stack_share", "tech_production.tsv", "tech", (), 0.3),
    _P("production_ghg_unit", "tech_production.tsv", "tech", ("p", "j"), 0.0),
    _P("production_risk_unit", "tech_production.tsv", "tech", ("p", "j"), 0.0),
    _P("conversion_capex", "tech_production.tsv", "tech", ("i",)),
    _P("conversion_opex", "tech_production.tsv", "tech", ("i",), 0.0),
    _P("conversion_energy", "tech_production.tsv", "tech", ("i",), 0.0),
    _P("discount_rate", "tech_production.tsv", "tech", (), 0.0),
    _P("inflation_rate", "tech_production.tsv", "tech", (), 0.0),
    _P("years_per_period", "tech_production.tsv", "tech", ("t",), 1.0),
    # tech_storage.tsv
    _P("storage_capacity", "tech_storage.tsv", "tech", ("s", "j")),
    _P("storage_capex", "tech_storage.tsv", "tech", ("s", "j")),
    _P("storage_opex", "tech_storage.tsv", "tech", ("s", "j")),
    _P("storage_ghg_unit", "tech_storage.tsv", "tech", ("s", "j"), 0.0),
    _P("storage_ghg_kg", "tech_storage.tsv", "tech", ("s",), 0.0),
    _P("storage_risk_unit", "tech_storage.tsv", "tech", ("s", "j"), 0.0),
    # tech_station.tsv
    _P("station_capacity", "tech_station.tsv", "tech", ("fs", "j")),
    _P("station_capex", "tech_station.tsv", "tech", ("fs", "j")),
    _P("station_opex", "tech_station.tsv", "tech", ("fs", "j")),
    # tech_transport.tsv
    _P("truck_capacity", "tech_transport.tsv", "tech", ("i", "l")),
    _P("truck_capex", "tech_transport.tsv", "tech", ("i", "l")),
    _P("route_enabled", "tech_transport.tsv", "tech", ("i", "l"), 1, integral=True),
    _P("truck_speed", "tech_transport.tsv", "tech", ("l",), 50.0),
    _P("handling_time", "tech_transport.tsv", "tech", ("l",)),
    _P("truck_availability", "tech_transport.tsv", "tech", ("l",), 18.0),
    _P("driver_wage", "tech_transport.tsv", "tech", (), 20.47),
    _P("fuel_cost_km", "tech_transport.tsv", "tech", ("l",)),
    _P("maintenance_km", "tech_transport.tsv", "tech", ("l",)),
    _P("general_cost_day", "tech_transport.tsv", "tech", ("l",), 7.32),
    _P("truck_ghg_km", "tech_transport.tsv", "tech", ("l",), 0.0),
    _P("truck_risk_unit", "tech_transport.tsv", "tech", ("l",), 0.0),
    _P("truck_lifetime", "tech_transport.tsv", "tech", (), 10.0),
    _P("retrofit_capex", "tech_transport.tsv", "tech", ("l",)),
    _P("retrofit_maintenance_km", "tech_transport.tsv", "tech", ("l",)),
    _P("retrofit_fuel_cost_km", "tech_transport.tsv", "tech", ("l",), 0.0),
    _P("retrofit_ghg_km", "tech_transport.tsv", "tech", ("l",), 0.0),
    _P("fcev_consumption", "tech_transport.tsv", "tech", (), 13.2),
    # distances.tsv
    _P("distance", "distances.tsv", "tech", ("g", "g")),
    # geography.tsv
    _P("production_ban", "geography.tsv", "geo", ("p", "j", "i", "g", "t"), 0, integral=True),
    _P("central_grid", "geography.tsv", "geo", ("g",), 1, integral=True),
    _P("central_only_size", "geography.tsv", "geo", ("j",), 0, integral=True),
    _P("export_ban", "geography.tsv", "geo", ("g",), 0, integral=True),
    _P("demand_grid", "geography.tsv", "geo", ("g",), 1, integral=True),
)

BY_NAME: dict[str, ParamSpec] = {p.name: p for p in PARAMS}

FILES: tuple[str, ...] = tuple(dict.fromkeys(p.file for p in PARAMS))

# parse functions for index members
INDEX_TYPES: dict[str, Callable[[str], Any]] = {
    "g": str, "t": int, "m": int, "e": str, "p": str, "j": str,
    "i": str, "l": str, "s": str, "fs": str,
}


def params_in(file: str) -> list[ParamSpec]:
    return [p for p in PARAMS if p.file == file]


def group_params(group: str) -> list[ParamSpec]:
    return [p for p in PARAMS if p.group == group]
