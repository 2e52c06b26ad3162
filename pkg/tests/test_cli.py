import csv
import json
import shutil

import pytest

from h2supply.cli import main
from h2supply.data import bundle_path
from h2supply.scenario import bundle_hash
from h2supply.solver import parse_mps

TINY = str(bundle_path("desk_tiny"))


@pytest.fixture
def tiny_copy(tmp_path):
    return shutil.copytree(bundle_path("desk_tiny"), tmp_path / "tiny")


def _edit(path, old, new):
    path.write_text(path.read_text().replace(old, new))


def test_validate_exit_codes(tiny_copy, tmp_path, capsys):
    assert main(["validate", TINY]) == 0
    assert main(["validate", str(tmp_path / "missing")]) == 2
    _edit(tiny_copy / "demand.tsv", "resident_share\t2\t1\t0.4", "resident_share\t2\t1\t0.3")
    assert main(["validate", str(tiny_copy)]) == 1
    assert "demand.tpop_sum" in capsys.readouterr().out


def test_optimize_writes_consistent_artifacts(tmp_path):
    out = tmp_path / "run"
    assert main(["optimize", TINY, "--objective", "cost", "--out", str(out)]) == 0
    for name in ("solution.csv", "kpi.json", "monthly.svg", "manifest.json"):
        assert (out / name).is_file()
    kpi = json.loads((out / "kpi.json").read_text())
    assert kpi["lcoh_eur_per_kg"] > 0 and "cost_shares" in kpi
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"]["sha256"] == bundle_hash(TINY)
    assert set(manifest["outputs"]) >= {"solution.csv", "kpi.json", "monthly.svg"}
    assert main(["optimize", TINY, "--objective", "cost", "--out", str(tmp_path / "again")]) == 0
    for name in ("solution.csv", "kpi.json", "monthly.svg"):
        assert (out / name).read_bytes() == (tmp_path / "again" / name).read_bytes()


def test_optimize_infeasible_exit_code(tiny_copy, tmp_path, capsys):
    _edit(tiny_copy / "demand.tsv", "fuel_residents\t2.4", "fuel_residents\t2400")
    assert main(["optimize", str(tiny_copy), "--out", str(tmp_path / "run")]) == 3
    assert "infeasible" in capsys.readouterr().err.lower()


def test_sweep_single_cell_ranks_first(tmp_path):
    out = tmp_path / "sweep"
    assert main(["sweep", TINY, "--grid", "1x1", "--out", str(out)]) == 0
    rows = list(csv.DictReader((out / "pareto.csv").open()))
    assert len(rows) == 1 and rows[0]["rank"] == "1"
    assert json.loads((out / "ranking.json").read_text())["alternatives"][0]["rank"] == 1
    assert (out / "pareto.svg").read_text().lstrip().startswith("<?xml")
    assert main(["rank", str(out / "pareto.csv"), "--criteria", "cost,ghg"]) == 0
    assert main(["report", str(out)]) == 0


def test_sweep_rejects_bad_grid(tmp_path):
    assert main(["sweep", TINY, "--grid", "0x2", "--out", str(tmp_path / "s")]) == 1


def test_rank_weights_change_choice(tmp_path, capsys):
    path = tmp_path / "alts.csv"
    path.write_text("cost,ghg,risk\n61.4,22,51.6\n84.8,16.6,263.9\n76.9,21.3,49.1\n")
    out = tmp_path / "rank.json"
    assert main(["rank", str(path), "--weights", "1,1,1", "--out", str(out)]) == 0
    ranks = [a["rank"] for a in json.loads(out.read_text())["alternatives"]]
    assert ranks[0] == 1
    assert main(["rank", str(path), "--weights", "1,0,1"]) == 1


def test_export_mps(tmp_path):
    a, b = tmp_path / "a" / "m.mps", tmp_path / "b.mps"
    assert main(["export-mps", TINY, "--out", str(a)]) == 0
    assert main(["export-mps", TINY, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert parse_mps(a).n > 0
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["export-mps", TINY, "--out", str(blocker / "m.mps")]) == 2


def test_demand_and_water_tables(tmp_path):
    assert main(["demand", TINY, "--out", str(tmp_path)]) == 0
    assert main(["water", TINY, "--water", "0.05", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "demand.csv").is_file() and (tmp_path / "water.csv").is_file()
