import dataclasses
import shutil

import pytest

from h2supply.data import bundle_path
from h2supply.demand import demand_table
from h2supply.scenario import (
    ScenarioLoadError, bundle_hash, calibrate_demand_totals, load_scenario, save_scenario, validate_scenario,
)


@pytest.fixture
def tiny_copy(tmp_path):
    return shutil.copytree(bundle_path("desk_tiny"), tmp_path / "tiny")


def _edit(path, old, new):
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new))


def test_corsica_shape_and_defaults(corsica):
    assert len(corsica.sets.grids) == 9
    assert len(corsica.sets.periods) == 6
    assert corsica.water.water_price == 2.18
    assert validate_scenario(corsica).ok


def test_shipped_desk_bundles_validate(tiny, reference):
    assert validate_scenario(tiny).ok
    assert validate_scenario(reference).ok


def test_distance_asymmetry_is_a_load_error(tiny_copy):
    _edit(tiny_copy / "distances.tsv", "distance\t2\t1\t60", "distance\t2\t1\t61")
    with pytest.raises(ScenarioLoadError, match="distance asymmetry"):
        load_scenario(tiny_copy)


def test_missing_bundle_file_is_a_load_error(tiny_copy):
    (tiny_copy / "water.tsv").unlink()
    with pytest.raises(ScenarioLoadError):
        load_scenario(tiny_copy)


def test_resident_shares_must_sum_to_one(tiny_copy):
    _edit(tiny_copy / "demand.tsv", "resident_share\t2\t1\t0.4", "resident_share\t2\t1\t0.35")
    report = validate_scenario(load_scenario(tiny_copy))
    assert "demand.tpop_sum" in report.rules()


def test_full_load_hours_beyond_month_length(tiny):
    tech = tiny.tech
    k = next(iter(tech.max_hours))
    bad = dataclasses.replace(tiny, tech=dataclasses.replace(tech, max_hours={**tech.max_hours, k: 800.0}))
    assert "tech.elcf" in validate_scenario(bad).rules()


def test_save_and_reload_round_trip(tiny, tmp_path):
    out = save_scenario(tiny, tmp_path / "saved")
    again = load_scenario(out)
    assert again.tech == tiny.tech and again.demand == tiny.demand and again.water == tiny.water
    assert bundle_hash(out) == bundle_hash(save_scenario(again, tmp_path / "saved2"))


def test_calibration_hits_the_target(corsica):
    first = corsica.sets.periods[0]
    scaled = calibrate_demand_totals(corsica, 7286.0, first)
    assert demand_table(scaled).period_total()[0] == pytest.approx(7286.0, rel=1e-12)
    assert demand_table(scaled).values == pytest.approx(2 * demand_table(corsica).values, rel=1e-9)


def test_calibration_identity_returns_same_scenario(tiny):
    total = demand_table(tiny).period_total()[0]
    assert calibrate_demand_totals(tiny, total, tiny.sets.periods[0]) is tiny


def test_calibration_rejects_bad_inputs(tiny):
    with pytest.raises(ValueError):
        calibrate_demand_totals(tiny, 0.0, 1)
    with pytest.raises(IndexError):
        calibrate_demand_totals(tiny, 10.0, 99)
