"""Domain data model for a hydrogen supply chain scenario.

Every parameter table is a plain mapping.  Single-index tables are keyed by the
index member itself, multi-index tables by a tuple in the order given by the
parameter schema (see :mod:`h2supply.scenario.schema`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping


@dataclass(frozen=True)
class Sets:
    grids: tuple[str, ...]
    periods: tuple[int, ...]
    years: tuple[int, ...]
    months: tuple[int, ...]
    sources: tuple[str, ...] = ("PV", "Wind", "Grid")
    techs: tuple[str, ...] = ("PEM", "AE")
    sizes: tuple[str, ...] = ("mini", "small", "medium", "large")
    forms: tuple[str, ...] = ("gas", "liquid")
    modes: tuple[str, ...] = ("tube_trailer", "tanker_truck")
    storages: tuple[str, ...] = ("gas", "liquid")
    stations: tuple[str, ...] = ("gas", "liquid")

    def members(self, key: str) -> tuple:
        return getattr(self, SET_FIELDS[key])

    def year_of(self, t: int) -> int:
        return self.years[self.periods.index(t)]

    def period_of_year(self, year: int) -> int:
        try:
            return self.periods[self.years.index(year)]
        except ValueError:
            raise IndexError(f"year {year} is not a declared period") from None


# short index key -> Sets attribute
SET_FIELDS = {
    "g": "grids",
    "t": "periods",
    "m": "months",
    "e": "sources",
    "p": "techs",
    "j": "sizes",
    "i": "forms",
    "l": "modes",
    "s": "storages",
    "fs": "stations",
}


@dataclass(frozen=True)
class DemandParams:
    fuel_residents: float  # ktoe/yr
    fuel_goods: float  # ktoe/yr
    fuel_tourism: float  # ktoe/yr
    resident_share: Mapping[tuple[str, int], float]
    tourism_season_share: Mapping[tuple[int, int], float]
    tourism_grid_share: Mapping[str, float]
    resident_growth: Mapping[int, float]
    tourism_growth: Mapping[int, float]
    kwh_per_toe: float = 11630.0
    h2_lhv: float = 33.33  # kWh/kg
    substitution_rate: float = 0.025


@dataclass(frozen=True)
class EnergyParams:
    installable_power: Mapping[tuple[str, str], float]  # kW
    pv_capacity_factor: Mapping[int, float]
    wind_capacity_factor: Mapping[int, float]
    month_hours: Mapping[int, float]
    month_days: Mapping[int, int]
    capacity_growth: Mapping[tuple[int, str], float]
    electricity_use: Mapping[tuple[str, str], float]  # kWh/kg
    pv_allowed: Mapping[str, int]
    wind_allowed: Mapping[str, int]
    electricity_price: Mapping[tuple[str, int], float]  # EUR/kWh
    electricity_ghg: Mapping[str, float]  # kgCO2e/kWh
    consumption_margin: float = 0.0


@dataclass(frozen=True)
class WaterParams:
    surface_vulnerability: Mapping[str, int]
    ground_vulnerability: Mapping[str, int]
    season_deficit: Mapping[tuple[str, int], int]
    potable_water: Mapping[int, float]  # Mm3
    surface_share: float = 0.8
    ground_share: float = 0.2
    water_per_kg: float = 9.0  # L/kg
    min_withdrawal_rate: float = 0.0
    max_withdrawal_rate: float = 0.001
    vulnerability_min: float = 1.0
    vulnerability_max: float = 5.0
    water_price: float = 2.18  # EUR/m3


@dataclass(frozen=True)
class TechnoEconomics:
    # production, per (p, j, i)
    electrolyzer_power: Mapping[tuple[str, str, str], float]
    electrolyzer_capex: Mapping[tuple[str, str, str], float]
    electrolyzer_opex: Mapping[tuple[str, str, str], float]
    min_hours: Mapping[tuple[str, str, str], float]
    max_hours: Mapping[tuple[str, str, str], float]
    stack_lifetime: Mapping[str, float]
    production_ghg_unit: Mapping[tuple[str, str], float]
    production_risk_unit: Mapping[tuple[str, str], float]
    conversion_capex: Mapping[str, float]
    conversion_opex: Mapping[str, float]
    conversion_energy: Mapping[str, float]
    years_per_period: Mapping[int, float]
    # storage, per (s, j)
    storage_capacity: Mapping[tuple[str, str], float]
    storage_capex: Mapping[tuple[str, str], float]
    storage_opex: Mapping[tuple[str, str], float]
    storage_ghg_unit: Mapping[tuple[str, str], float]
    storage_ghg_kg: Mapping[str, float]
    storage_risk_unit: Mapping[tuple[str, str], float]
    # refuelling stations, per (fs, j)
    station_capacity: Mapping[tuple[str, str], float]
    station_capex: Mapping[tuple[str, str], float]
    station_opex: Mapping[tuple[str, str], float]
    # transport
    truck_capacity: Mapping[tuple[str, str], float]
    truck_capex: Mapping[tuple[str, str], float]
    route_enabled: Mapping[tuple[str, str], int]
    truck_speed: Mapping[str, float]
    handling_time: Mapping[str, float]
    truck_availability: Mapping[str, float]
    fuel_cost_km: Mapping[str, float]
    maintenance_km: Mapping[str, float]
    general_cost_day: Mapping[str, float]
    truck_ghg_km: Mapping[str, float]
    truck_risk_unit: Mapping[str, float]
    retrofit_capex: Mapping[str, float]
    retrofit_maintenance_km: Mapping[str, float]
    retrofit_fuel_cost_km: Mapping[str, float]
    retrofit_ghg_km: Mapping[str, float]
    distance: Mapping[tuple[str, str], float]  # km
    driver_wage: float = 20.47
    fcev_consumption: float = 13.2  # kg/100 km
    truck_lifetime: float = 10.0  # years
    stack_share: float = 0.3
    discount_rate: float = 0.0
    inflation_rate: float = 0.0


@dataclass(frozen=True)
class GeographyMasks:
    production_ban: Mapping[tuple[str, str, str, str, int], int]
    central_grid: Mapping[str, int]
    central_only_size: Mapping[str, int]
    export_ban: Mapping[str, int]
    demand_grid: Mapping[str, int]


@dataclass(frozen=True)
class Options:
    retrofit: bool = False
    # "off", "on" (use the tabulated max withdrawal rate) or a cap in percent
    water: str = "off"
    storage_autonomy_days: float = 3.0
    # "divide" converts fuel energy to kg with /LHV; "multiply" uses the printed x PCI form
    heating_value_mode: str = "divide"

    @property
    def water_cap_rate(self) -> float | None:
        """Withdrawal cap as a fraction; None when off, NaN when taken from the table."""
        if self.water == "off":
            return None
        if self.water == "on":
            return float("nan")
        return float(self.water) / 100.0


@dataclass(frozen=True)
class Scenario:
    sets: Sets
    demand: DemandParams
    energy: EnergyParams
    water: WaterParams
    tech: TechnoEconomics
    geo: GeographyMasks
    options: Options = field(default_factory=Options)
    name: str = "scenario"
