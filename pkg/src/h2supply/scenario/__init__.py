from .bundle import ScenarioLoadError, bundle_hash, load_scenario, save_scenario
from .calibrate import calibrate_demand_totals
from .types import (
    DemandParams, EnergyParams, GeographyMasks, Options, Scenario, Sets, TechnoEconomics,
    WaterParams,
)
from .validate import ValidationReport, Violation, validate_scenario

__all__ = [
    "DemandParams", "EnergyParams", "GeographyMasks", "Options", "Scenario", "ScenarioLoadError",
    "Sets", "TechnoEconomics", "ValidationReport", "Violation", "WaterParams", "bundle_hash",
    "calibrate_demand_totals", "load_scenario", "save_scenario", "validate_scenario",
]
