"""Small instance families derived from the shipped desk bundles, used as
ground-truth fixtures for the exhaustive oracle."""
from __future__ import annotations

import dataclasses
from typing import Iterator

from .data import bundle_path
from .model import OBJECTIVES, MilpInstance, assemble
from .scenario import load_scenario
from .scenario.types import Scenario


def _options(s: Scenario, **kw) -> Scenario:
    return dataclasses.replace(s, options=dataclasses.replace(s.options, **kw))


def _demand(s: Scenario, factor: float) -> Scenario:
    d = s.demand
    d = dataclasses.replace(d, fuel_residents=d.fuel_residents * factor, fuel_goods=d.fuel_goods * factor,
                            fuel_tourism=d.fuel_tourism * factor)
    return dataclasses.replace(s, demand=d)


def _distance(s: Scenario, km: float) -> Scenario:
    dist = {k: (0.0 if v == 0.0 else km) for k, v in s.tech.distance.items()}
    return dataclasses.replace(s, tech=dataclasses.replace(s.tech, distance=dist))


def tiny_variants(base: Scenario | None = None) -> dict[str, Scenario]:
    """Scenario variants of ``desk_tiny`` (2 grids, 1 period, 2 months)."""
    s = base or load_scenario(bundle_path("desk_tiny"))
    return {
        "base": s,
        "water_off": _options(s, water="off"),
        "water_005": _options(s, water="0.05"),
        "autonomy_2d": _options(s, storage_autonomy_days=2.0),
        "demand_080": _demand(s, 0.8),
        "demand_060": _demand(s, 0.6),
        "far_grids": _distance(s, 120.0),
    }


def oracle_instances() -> Iterator[tuple[str, MilpInstance]]:
    """Every (variant, objective) pair: 21 instances."""
    for name, s in tiny_variants().items():
        for objective in OBJECTIVES:
            yield f"{name}/{objective}", assemble(s, objective)
