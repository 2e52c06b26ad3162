import dataclasses

import numpy as np
import pytest

from h2supply.demand import demand_table, hydrogen_demand, resident_term, retrofit_consumption, write_demand_csv


def test_no_tourism_leaves_resident_term(tiny):
    shares = {g: 0.0 for g in tiny.sets.grids}
    s = dataclasses.replace(tiny, demand=dataclasses.replace(tiny.demand, tourism_grid_share=shares))
    for g in s.sets.grids:
        for m in s.sets.months:
            assert hydrogen_demand(s, g, 1, m) == pytest.approx(resident_term(s, g, 1))


def test_zero_fuel_gives_zero_demand(tiny):
    d = dataclasses.replace(tiny.demand, fuel_residents=0.0, fuel_goods=0.0, fuel_tourism=0.0)
    assert np.all(demand_table(dataclasses.replace(tiny, demand=d)).values == 0.0)


def test_growth_between_first_and_last_period(corsica):
    totals = demand_table(corsica).period_total()
    assert totals[-1] / totals[0] == pytest.approx(27568 / 3643, rel=0.02)
    assert np.all(np.diff(totals) > 0)


def test_busiest_grid_in_last_period(corsica):
    mean = demand_table(corsica).annual_mean()
    assert mean[corsica.sets.grids.index("7"), -1] == pytest.approx(4899, rel=0.05)


def test_summer_demand_exceeds_winter(tiny):
    for g in tiny.sets.grids:
        assert hydrogen_demand(tiny, g, 1, 7) > hydrogen_demand(tiny, g, 1, 1)


def test_unknown_members_raise(tiny):
    with pytest.raises(IndexError):
        hydrogen_demand(tiny, "nowhere", 1, 1)
    with pytest.raises(IndexError):
        hydrogen_demand(tiny, "1", 1, 13)


def test_retrofit_consumption():
    assert retrofit_consumption(1, 50, 13.2) == pytest.approx(13.2)
    assert retrofit_consumption(3, 100, 13.2) == pytest.approx(79.2)
    assert retrofit_consumption(0, 100, 13.2) == 0.0
    with pytest.raises(ValueError):
        retrofit_consumption(-1, 10, 13.2)


def test_demand_csv(tiny, tmp_path):
    path = write_demand_csv(demand_table(tiny), tmp_path / "demand.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "g,t,m,kg_per_day"
    assert len(lines) == 1 + len(tiny.sets.grids) * len(tiny.sets.periods) * len(tiny.sets.months)
