"""Artifact writers: solution and front tables, KPI records, SVG plots, run manifest."""
from __future__ import annotations

import csv
import json
import math
import platform
import sys
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__


def _plain(obj):
    """JSON-ready copy: numpy scalars to Python, tuple keys joined, non-finite as strings."""
    if isinstance(obj, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    return obj


def write_json(obj, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n")
    return path


def write_solution_csv(inst, x, path, threshold: float = 1e-9) -> Path:
    """Nonzero variables as (family, index, value) rows in variable order."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["family", "index", "value", "integer"])
        for j, (name, subs) in enumerate(inst.variables):
            if abs(x[j]) > threshold:
                v = float(np.round(x[j])) if inst.integer[j] else float(x[j])
                w.writerow([name, ";".join(map(str, subs)), repr(v), int(inst.integer[j])])
    return path


PARETO_FIELDS = ("cost", "ghg", "risk", "lcoh", "eps_ghg", "eps_risk", "rank", "score")


def write_pareto_csv(front, ranking, path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PARETO_FIELDS)
        for k, p in enumerate(front.points):
            w.writerow([repr(float(v)) for v in (p.cost, p.ghg, p.risk, p.lcoh, p.eps_ghg, p.eps_risk)]
                       + [int(ranking.rank[k]), repr(float(ranking.score[k]))])
    return path


def read_criteria_csv(path, columns=("cost", "ghg", "risk")) -> np.ndarray:
    with Path(path).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    missing = [c for c in columns if rows and c not in rows[0]]
    if missing or not rows:
        raise ValueError(f"{path}: need columns {list(columns)} and at least one row")
    return np.array([[float(r[c]) for c in columns] for r in rows], float)


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    plt.rcParams["svg.hashsalt"] = "h2supply"  # stable element ids
    return plt


def _save_svg(fig, path) -> Path:
    fig.savefig(path, format="svg", metadata={"Date": None})
    return Path(path)


def plot_pareto_svg(front, ranking, path) -> Path:
    """Cost-risk and cost-GHG projections of the front with the compromise point marked."""
    plt = _pyplot()
    M = front.matrix()
    best = ranking.best
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for ax, col, label in ((axes[0], 2, "risk index"), (axes[1], 1, "GHG (tCO2e/day)")):
        ax.scatter(M[:, 0], M[:, col], c="tab:blue", label="nondominated")
        ax.scatter([M[best, 0]], [M[best, col]], marker="*", s=220, c="tab:red", label="compromise")
        ax.set_xlabel("TDC (kEUR/day)")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
    axes[0].legend(loc="best")
    fig.tight_layout()
    out = _save_svg(fig, path)
    plt.close(fig)
    return out


def monthly_production(inst, x) -> dict[tuple, float]:
    """Produced kg/day per (grid, period, month)."""
    out = defaultdict(float)
    for j in inst.variables.family("PR"):
        _, (p, size, form, g, t, m) = inst.variables.key(j)
        out[(g, t, m)] += float(x[j])
    return dict(out)


def plot_monthly_svg(inst, x, path) -> Path:
    """Monthly production per grid, one panel per period."""
    plt = _pyplot()
    prod = monthly_production(inst, x)
    sets = inst.meta["context"].s.sets
    fig, axes = plt.subplots(1, len(sets.periods), figsize=(4 * len(sets.periods), 3.5), squeeze=False)
    for ax, t in zip(axes[0], sets.periods):
        for g in sets.grids:
            ax.plot(sets.months, [prod.get((g, t, m), 0.0) for m in sets.months], marker="o", label=f"grid {g}")
        ax.set_title(f"period {t}")
        ax.set_xlabel("month")
        ax.set_ylabel("production (kg/day)")
        ax.grid(alpha=0.3)
    axes[0][0].legend(loc="best", fontsize="small")
    fig.tight_layout()
    out = _save_svg(fig, path)
    plt.close(fig)
    return out


def write_manifest(outdir, command: str, options: dict, files: list, scenario_path=None,
                   scenario_hash: str | None = None, solver: dict | None = None, started: datetime | None = None) -> Path:
    outdir = Path(outdir)
    now = datetime.now(timezone.utc)
    record = {
        "command": command,
        "options": options,
        "scenario": {"path": str(scenario_path) if scenario_path else None, "sha256": scenario_hash},
        "solver": solver or {},
        "outputs": sorted(Path(f).name for f in files),
        "started": (started or now).isoformat(timespec="seconds"),
        "finished": now.isoformat(timespec="seconds"),
        "version": __version__,
        "python": platform.python_version(),
        "argv": sys.argv[1:],
    }
    return write_json(record, outdir / "manifest.json")
