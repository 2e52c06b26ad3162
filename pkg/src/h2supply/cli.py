"""Command-line entry point: ``h2supply <command> ...``.

Exit codes: 0 ok, 1 invalid scenario or arguments, 2 I/O failure,
3 infeasible problem.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import report
from .demand import demand_table, write_demand_csv
from .model import OBJECTIVES, ModelError, assemble
from .moo import SweepError, epsilon_sweep, mtopsis_rank
from .resources import write_water_profile
from .scenario import ScenarioLoadError, bundle_hash, load_scenario, validate_scenario
from .solver import BACKENDS, BnbOptions, solve, solve_lp
from .solver.mps import export_mps

OK, INVALID, IO_ERROR, INFEASIBLE = 0, 1, 2, 3

log = logging.getLogger("h2supply")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(path: str, retrofit: bool | None = None, water: str | None = None):
    root = Path(path)
    if not root.is_dir():
        raise CliError(f"scenario bundle not found: {root}", IO_ERROR)
    try:
        s = load_scenario(root)
    except ScenarioLoadError as exc:
        raise CliError(f"cannot load {root}: {exc}", INVALID) from exc
    except OSError as exc:
        raise CliError(f"cannot read {root}: {exc}", IO_ERROR) from exc
    changes = {}
    if retrofit is not None:
        changes["retrofit"] = retrofit
    if water is not None:
        changes["water"] = water
    if changes:
        s = dataclasses.replace(s, options=dataclasses.replace(s.options, **changes))
    rep = validate_scenario(s)
    if rep:
        raise CliError("\n".join(map(str, rep)), INVALID)
    return s


def _outdir(path: str) -> Path:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {out}: {exc}", IO_ERROR) from exc
    return out


def _opts(args) -> BnbOptions:
    return BnbOptions(time_limit=args.time_limit, log_every=args.log_every)


def _weights(text: str, k: int) -> list[float]:
    try:
        w = [float(v) for v in text.split(",")]
    except ValueError:
        raise CliError(f"bad weights {text!r}", INVALID) from None
    if len(w) != k or any(v <= 0 for v in w):
        raise CliError(f"need {k} positive comma-separated weights, got {text!r}", INVALID)
    return w


def cmd_validate(args) -> int:
    root = Path(args.scenario)
    if not root.is_dir():
        raise CliError(f"scenario bundle not found: {root}", IO_ERROR)
    try:
        s = load_scenario(root)
    except ScenarioLoadError as exc:
        raise CliError(f"cannot load {root}: {exc}", INVALID) from exc
    rep = validate_scenario(s)
    for v in rep:
        print(v)
    print(f"{s.name}: {'valid' if not rep else f'{len(rep)} violation(s)'}")
    return OK if not rep else INVALID


def cmd_demand(args) -> int:
    s = _load(args.scenario)
    out = _outdir(args.out)
    path = write_demand_csv(demand_table(s), out / "demand.csv")
    print(path)
    return OK


def cmd_water(args) -> int:
    s = _load(args.scenario, water=args.water)
    out = _outdir(args.out)
    path = write_water_profile(s, out / "water.csv")
    print(path)
    return OK


def cmd_optimize(args) -> int:
    started = datetime.now(timezone.utc)
    s = _load(args.scenario, retrofit=args.retrofit or None, water=args.water)
    out = _outdir(args.out)
    inst = assemble(s, args.objective)
    sol = solve(inst, args.backend, _opts(args))
    if sol.x is None:
        cert = sol.certificate
        if not cert and sol.status == "infeasible":
            cert = solve_lp(inst).certificate
        msg = f"{args.objective} problem is {sol.status}"
        if cert:
            msg += "; conflicting rows: " + ", ".join(cert)
        raise CliError(msg, INFEASIBLE if sol.status == "infeasible" else INVALID)
    kpis = dict(sol.kpis)
    kpis.update(status=sol.status, objective_value=sol.objective, bound=sol.bound, backend=sol.backend)
    files = [
        report.write_solution_csv(inst, sol.x, out / "solution.csv"),
        report.write_json(kpis, out / "kpi.json"),
        report.plot_monthly_svg(inst, sol.x, out / "monthly.svg"),
    ]
    files.append(out / "manifest.json")
    report.write_manifest(out, "optimize", _argdict(args), files, args.scenario, bundle_hash(args.scenario),
                          {"backend": sol.backend, "nodes": sol.nodes, "seconds": sol.seconds}, started)
    print(f"{args.objective}: {sol.status}, TDC {kpis['tdc_keur_per_day']:.4f} kEUR/day, "
          f"LCOH {kpis['lcoh_eur_per_kg']:.4f} EUR/kg, GHG {kpis['ghg_t_per_day']:.5f} t/day, "
          f"risk {kpis['risk']:.4f}")
    return OK


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise CliError(f"grid must look like 4x4, got {text!r}", INVALID) from None
    if a < 1 or b < 1:
        raise CliError("grid counts must be >= 1", INVALID)
    return a, b


def cmd_sweep(args) -> int:
    started = datetime.now(timezone.utc)
    n_ghg, n_risk = _grid(args.grid)
    weights = _weights(args.weights, 3)
    s = _load(args.scenario, retrofit=args.retrofit or None, water=args.water)
    out = _outdir(args.out)
    try:
        front = epsilon_sweep(s, n_ghg, n_risk, args.backend, _opts(args), args.jobs)
    except SweepError as exc:
        raise CliError(str(exc), INFEASIBLE) from exc
    ranking = mtopsis_rank(front.matrix(), weights, classic=args.classic)
    best = front.points[ranking.best]
    rank_doc = ranking.to_dict()
    rank_doc.update(compromise={"index": ranking.best, "cost": best.cost, "ghg": best.ghg, "risk": best.risk,
                                "lcoh": best.lcoh, "eps_ghg": best.eps_ghg, "eps_risk": best.eps_risk},
                    payoff=front.payoff, utopia=front.utopia, nadir=front.nadir)
    files = [
        report.write_pareto_csv(front, ranking, out / "pareto.csv"),
        report.write_json(rank_doc, out / "ranking.json"),
        report.plot_pareto_svg(front, ranking, out / "pareto.svg"),
        out / "manifest.json",
    ]
    report.write_manifest(out, "sweep", _argdict(args), files, args.scenario, bundle_hash(args.scenario),
                          {"backend": args.backend}, started)
    print(f"{len(front)} nondominated point(s); compromise TDC {best.cost:.4f} kEUR/day, "
          f"GHG {best.ghg:.5f} t/day, risk {best.risk:.4f}")
    return OK


def cmd_rank(args) -> int:
    cols = tuple(args.criteria.split(","))
    if not cols or any(c not in ("cost", "ghg", "risk") for c in cols):
        raise CliError(f"criteria must be drawn from cost,ghg,risk, got {args.criteria!r}", INVALID)
    try:
        M = report.read_criteria_csv(args.csv, cols)
    except OSError as exc:
        raise CliError(f"cannot read {args.csv}: {exc}", IO_ERROR) from exc
    except ValueError as exc:
        raise CliError(str(exc), INVALID) from exc
    weights = _weights(args.weights, len(cols)) if args.weights else None
    ranking = mtopsis_rank(M, weights, classic=args.classic)
    doc = ranking.to_dict()
    doc["criteria"] = list(cols)
    if args.out:
        out = Path(args.out)
        try:
            report.write_json(doc, out)
        except OSError as exc:
            raise CliError(f"cannot write {out}: {exc}", IO_ERROR) from exc
    for k in ranking.order:
        print(f"rank {ranking.rank[k]}: row {k} {dict(zip(cols, M[k].tolist()))} score {ranking.score[k]:.6g}")
    return OK


def cmd_export_mps(args) -> int:
    s = _load(args.scenario, retrofit=args.retrofit or None, water=args.water)
    inst = assemble(s, args.objective)
    out = Path(args.out)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        export_mps(inst, out)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", IO_ERROR) from exc
    report.write_manifest(out.parent, "export-mps", _argdict(args), [out, out.parent / "manifest.json"],
                          args.scenario, bundle_hash(args.scenario))
    print(out)
    return OK


def cmd_report(args) -> int:
    root = Path(args.run)
    kpi, pareto = root / "kpi.json", root / "pareto.csv"
    if not kpi.exists() and not pareto.exists():
        raise CliError(f"{root} holds neither kpi.json nor pareto.csv", IO_ERROR)
    if kpi.exists():
        import json
        k = json.loads(kpi.read_text())
        print(f"objective {k['objective']} ({k['status']}) scenario {k['scenario']}")
        for key in ("tdc_keur_per_day", "lcoh_eur_per_kg", "ghg_t_per_day", "risk", "capex_share",
                    "electrolyzer_hours_per_month"):
            print(f"  {key:<30} {k[key]:.6g}")
        for group in ("cost_shares", "ghg_shares", "risk_shares"):
            print(f"  {group:<30} " + ", ".join(f"{n} {v:.1%}" for n, v in k[group].items()))
    if pareto.exists():
        M = report.read_criteria_csv(pareto, ("cost", "ghg", "risk", "rank"))
        for row in M[np.argsort(M[:, 3], kind="stable")]:
            print(f"  rank {int(row[3])}: TDC {row[0]:.4f} GHG {row[1]:.5f} risk {row[2]:.4f}")
    return OK


def _argdict(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="h2supply", description="Hydrogen supply chain design toolkit")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def scenario_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("scenario", help="scenario bundle directory")
        p.set_defaults(func=func)
        return p

    def model_flags(p):
        p.add_argument("--retrofit", action="store_true", help="retrofitted fuel-cell trucks")
        p.add_argument("--water", choices=("off", "on", "0.1", "0.05"), default=None,
                       help="water withdrawal restriction (default: bundle setting)")

    def solver_flags(p):
        p.add_argument("--backend", choices=sorted(BACKENDS), default="bnb")
        p.add_argument("--time-limit", type=float, default=600.0, help="seconds per MILP solve")
        p.add_argument("--log-every", type=int, default=0, help="B&B progress line every N nodes")

    scenario_cmd("validate", cmd_validate, "check a scenario bundle")
    p = scenario_cmd("demand", cmd_demand, "write the demand surface")
    p.add_argument("--out", default=".")
    p = scenario_cmd("water", cmd_water, "write water vulnerability and withdrawal bounds")
    p.add_argument("--water", choices=("off", "on", "0.1", "0.05"), default=None)
    p.add_argument("--out", default=".")

    p = scenario_cmd("optimize", cmd_optimize, "single-objective solve")
    p.add_argument("--objective", choices=OBJECTIVES, default="cost")
    model_flags(p)
    solver_flags(p)
    p.add_argument("--out", default="run")

    p = scenario_cmd("sweep", cmd_sweep, "epsilon-constraint sweep and compromise ranking")
    p.add_argument("--grid", default="4x4", help="GHG x risk cells, e.g. 4x4")
    p.add_argument("--weights", default="1,1,1", help="cost,ghg,risk weights")
    p.add_argument("--classic", action="store_true", help="rank by classic TOPSIS closeness")
    p.add_argument("--jobs", type=int, default=None, help="concurrent cell solves (default H2SUPPLY_JOBS or 1)")
    model_flags(p)
    solver_flags(p)
    p.add_argument("--out", default="sweep")

    p = sub.add_parser("rank", help="rank alternatives in a CSV with cost/ghg/risk columns")
    p.add_argument("csv")
    p.add_argument("--weights", default=None)
    p.add_argument("--criteria", default="cost,ghg,risk", help="columns to use, e.g. cost,ghg")
    p.add_argument("--classic", action="store_true")
    p.add_argument("--out", default=None, help="ranking JSON path")
    p.set_defaults(func=cmd_rank)

    p = scenario_cmd("export-mps", cmd_export_mps, "write the instance in fixed MPS format")
    p.add_argument("--objective", choices=OBJECTIVES, default="cost")
    model_flags(p)
    p.add_argument("--out", default="model.mps")

    p = sub.add_parser("report", help="summarize a run directory")
    p.add_argument("run")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
