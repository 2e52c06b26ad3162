import dataclasses
import math

import pytest

from h2supply.resources import (
    availability_per_kw, indexed_consumption, renewable_availability, water_bounds, water_consumption,
    water_profile, water_vulnerability,
)

from conftest import with_options


def test_availability_scales_with_installed_power(tiny):
    g, t, m = tiny.sets.grids[0], tiny.sets.periods[0], tiny.sets.months[0]
    for e in ("PV", "Wind"):
        per_kw = availability_per_kw(tiny, t, m, e)
        assert renewable_availability(tiny, g, t, m, e, 1000.0) == pytest.approx(
            1000.0 * per_kw if getattr(tiny.energy, f"{e.lower()}_allowed")[g] else 0.0)
    assert renewable_availability(tiny, g, t, m, "Grid", 1000.0) == 0.0


def test_constant_capacity_factor_example(tiny):
    # 1000 kW at a 20% capacity factor over a 30-day month yields 4800 kWh/day
    en = dataclasses.replace(tiny.energy, pv_capacity_factor={m: 0.2 for m in tiny.sets.months},
                             month_hours={m: 720.0 for m in tiny.sets.months},
                             month_days={m: 30 for m in tiny.sets.months},
                             capacity_growth={k: 1.0 for k in tiny.energy.capacity_growth},
                             pv_allowed={g: 1 for g in tiny.sets.grids})
    s = dataclasses.replace(tiny, energy=en)
    assert renewable_availability(s, "1", 1, 1, "PV", 1000.0) == pytest.approx(4800.0)


def test_unknown_member_raises(tiny):
    with pytest.raises(IndexError):
        renewable_availability(tiny, "1", 1, 1, "Coal")


def test_water_consumption():
    assert water_consumption(1000, 9) == pytest.approx(9.0)
    assert water_consumption(2345, 9) == pytest.approx(21.105)
    with pytest.raises(ValueError):
        water_consumption(-1, 9)


def test_vulnerability_combines_shares_and_season(corsica):
    assert water_vulnerability(corsica, "2", 7) == (2.2, 2.2)
    assert water_vulnerability(corsica, "4", 7) == (3.0, 6.0)
    assert water_vulnerability(corsica, "4", 1) == (3.0, 3.0)


def test_water_bounds_follow_the_cap(corsica):
    t = corsica.sets.periods[0]
    potable = corsica.water.potable_water[t]
    hi_01 = water_bounds(with_options(corsica, water="0.1"), "1", t, 7)[1]
    hi_005 = water_bounds(with_options(corsica, water="0.05"), "1", t, 7)[1]
    assert hi_01 == pytest.approx(corsica.water.vulnerability_max * potable * 1e-3 * 1e6)
    assert hi_005 == pytest.approx(hi_01 / 2)
    assert water_bounds(with_options(corsica, water="off"), "1", t, 7) == (0.0, math.inf)


def test_indexed_consumption(corsica):
    nd = corsica.energy.month_days[7]
    assert indexed_consumption(corsica, "4", 7, 10.0) == pytest.approx(10.0 * nd * 6.0)


def test_profile_covers_every_cell(tiny):
    rows = water_profile(tiny)
    assert len(rows) == len(tiny.sets.grids) * len(tiny.sets.periods) * len(tiny.sets.months)
