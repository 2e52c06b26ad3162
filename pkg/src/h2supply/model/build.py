"""Variable catalog and constraint builders of the supply chain MILP.

Units: flows and production in kg/day, storage in kg, electricity in kWh/day,
water in m3/day.  Each modeled month stands for ``Nd[m]`` identical days.
Geographic restrictions are applied as zero upper bounds, never as rows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from ..demand import hydrogen_demand
from ..resources import availability_per_kw, water_bounds, water_cap_rate, water_vulnerability
from ..scenario.types import Scenario
from .instance import InstanceBuilder, ModelError

MAX_BOUND_ITER = 60


def production_bounds(s: Scenario, p, j, i, m) -> tuple[float, float]:
    """(PCapMin, PCapMax) of one electrolyzer in kg/day for month ``m``."""
    gamma = s.energy.electricity_use[(p, j)]
    if gamma == 0:
        raise ModelError(f"electricity use of {p}/{j} is zero")
    kw = s.tech.electrolyzer_power[(p, j, i)]
    nd = s.energy.month_days[m]
    return (s.tech.min_hours[(p, j, i)] / nd * kw / gamma,
            s.tech.max_hours[(p, j, i)] / nd * kw / gamma)


def trip_factor(s: Scenario, i, l, g, h) -> float:
    """Trucks needed per kg/day shipped from ``g`` to ``h``."""
    tc = s.tech
    if (g, h) not in tc.distance:
        raise ModelError(f"no distance for grid pair ({g}, {h})")
    hours = 2.0 * tc.distance[(g, h)] / tc.truck_speed[l] + tc.handling_time[l]
    return hours / (tc.truck_availability[l] * tc.truck_capacity[(i, l)])


def retrofit_use_per_truck(s: Scenario, g, h) -> float:
    """Hydrogen burnt by one retrofitted truck doing its daily round trip (kg/day)."""
    return 2.0 * s.tech.distance[(g, h)] * s.tech.fcev_consumption / 100.0


@dataclass
class ModelContext:
    """Data shared by the builders of one instance."""
    s: Scenario
    dh2: dict = field(default_factory=dict)  # (g, t, m) -> kg/day
    routes: list = field(default_factory=list)  # enabled (i, l)
    pairs: list = field(default_factory=list)  # ordered (g, h), g != h
    tf: dict = field(default_factory=dict)  # (i, l, g, h) -> trucks per kg/day
    flow_bound: dict = field(default_factory=dict)  # t -> kg/day
    truck_bound: dict = field(default_factory=dict)  # (i, l, g, h, t) -> trucks

    @property
    def retrofit(self) -> bool:
        return bool(self.s.options.retrofit)

    @property
    def water_active(self) -> bool:
        return water_cap_rate(self.s) is not None

    def nd(self, m) -> float:
        return float(self.s.energy.month_days[m])


def make_context(s: Scenario) -> ModelContext:
    st = s.sets
    ctx = ModelContext(s)
    for g, t, m in product(st.grids, st.periods, st.months):
        ctx.dh2[(g, t, m)] = hydrogen_demand(s, g, t, m)
    ctx.routes = [(i, l) for i, l in product(st.forms, st.modes) if s.tech.route_enabled[(i, l)]]
    ctx.pairs = [(g, h) for g, h in product(st.grids, st.grids) if g != h]
    for (i, l), (g, h) in product(ctx.routes, ctx.pairs):
        ctx.tf[(i, l, g, h)] = trip_factor(s, i, l, g, h)
    # flows never exceed total delivered demand plus what retrofit trucks burn;
    # the latter depends on the truck bound, so iterate to a fixed point
    for t in st.periods:
        base = sum(max(ctx.dh2[(g, t, m)] for m in st.months) for g in st.grids)
        bound = base
        for _ in range(MAX_BOUND_ITER):
            trucks = {k: max(1, math.ceil(bound * f - 1e-9)) for k, f in ctx.tf.items()}
            burn = sum(n * retrofit_use_per_truck(s, g, h) for (i, l, g, h), n in trucks.items()) if ctx.retrofit else 0.0
            new = base + burn
            if new <= bound + 1e-9:
                break
            bound = new
        else:
            raise ModelError(f"retrofit consumption bound does not converge in period {t}")
        ctx.flow_bound[t] = bound
        for (i, l, g, h), n in trucks.items():
            ctx.truck_bound[(i, l, g, h, t)] = n
    return ctx


def _ceil(x: float) -> int:
    return max(0, math.ceil(x - 1e-9))


def declare_variables(b: InstanceBuilder, ctx: ModelContext) -> None:
    s, st = ctx.s, ctx.s.sets
    tc = s.tech
    G, T, M = st.grids, st.periods, st.months
    peak_total = max(ctx.flow_bound.values())
    peak_grid = {g: max(ctx.dh2[(g, t, m)] for t in T for m in M) for g in G}
    if ctx.retrofit:
        # a grid may also have to cover the fuel of trucks leaving it
        for g in G:
            peak_grid[g] += max(
                (sum(ctx.truck_bound[(i, l, g, h, t)] * retrofit_use_per_truck(s, g, h)
                     for (i, l) in ctx.routes for h in G if h != g) for t in T), default=0.0)
    autonomy = s.options.storage_autonomy_days

    for p, j, i in product(st.techs, st.sizes, st.forms):
        cap_max = min(production_bounds(s, p, j, i, m)[1] for m in M)
        units = _ceil(peak_total / cap_max) if cap_max > 0 else 0
        for g, t in product(G, T):
            b.var("NP", (p, j, i, g, t), ub=units, integer=True)
            b.var("IP", (p, j, i, g, t), ub=units, integer=True)
            for m in M:
                b.var("PR", (p, j, i, g, t, m))
    for i, g, t, m in product(st.forms, G, T, M):
        b.var("ST", (i, g, t, m))
    for sto, j in product(st.storages, st.sizes):
        for g in G:
            units = _ceil(autonomy * peak_grid[g] / tc.storage_capacity[(sto, j)])
            for t in T:
                b.var("NS", (sto, j, g, t), ub=units, integer=True)
                b.var("NSnew", (sto, j, g, t), ub=units, integer=True)
    for fs, j in product(st.stations, st.sizes):
        for g in G:
            units = _ceil(peak_grid[g] / tc.station_capacity[(fs, j)])
            for t in T:
                b.var("NFS", (fs, j, g, t), ub=units, integer=True)
                b.var("NFSnew", (fs, j, g, t), ub=units, integer=True)
                for m in M:
                    b.var("FR", (fs, j, fs, g, t, m))
    for (i, l), (g, h), t in product(ctx.routes, ctx.pairs, T):
        b.var("EPSILON", (i, l, g, h, t), ub=1, integer=True)
        b.var("XE", (i, l, g, h, t), ub=1, integer=True)
        for m in M:
            b.var("Q", (i, l, g, h, t, m), ub=ctx.flow_bound[t])
            b.var("NTUGRID", (i, l, g, h, t, m), ub=ctx.truck_bound[(i, l, g, h, t)], integer=True)
    for g, m, e in product(G, M, st.sources):
        b.var("ESP", (g, m, e), ub=s.energy.installable_power[(g, e)])
    for g, t, m in product(G, T, M):
        b.var("ESU", (g, t, m))
        for e in st.sources:
            b.var("ESUE", (e, g, t, m))
        b.var("WATERCONS", (g, t, m))
        if ctx.water_active:
            lo, hi = water_bounds(s, g, t, m)
            b.var("WCV", (g, t, m), lb=lo, ub=hi)
        if ctx.retrofit:
            for i in st.forms:
                b.var("DRETROFIT", (i, g, t, m))
    for t in T:
        b.var("WATERCOST", (t,))
    for i, g, t in product(st.forms, G, T):
        b.var("CONVCAP", (i, g, t))
        b.var("CONVNEW", (i, g, t))


def _chain(b: InstanceBuilder, T, stock: str, new: str, key, row: str) -> None:
    prev = None
    for t in T:
        terms = [(b.v(stock, *key, t), 1.0), (b.v(new, *key, t), -1.0)]
        if prev is not None:
            terms.append((b.v(stock, *key, prev), -1.0))
        b.row(terms, "E", 0.0, f"{row}[{','.join(map(str, key))},{t}]")
        prev = t


def add_capacity_linking(b: InstanceBuilder, ctx: ModelContext) -> None:
    """Unit-count chaining and capacity rows for production, storage and stations."""
    s, st = ctx.s, ctx.s.sets
    T, M = st.periods, st.months
    for p, j, i, g in product(st.techs, st.sizes, st.forms, st.grids):
        _chain(b, T, "NP", "IP", (p, j, i, g), "np_chain")
        for t, m in product(T, M):
            lo, hi = production_bounds(s, p, j, i, m)
            pr, np_ = b.v("PR", p, j, i, g, t, m), b.v("NP", p, j, i, g, t)
            tag = f"{p},{j},{i},{g},{t},{m}"
            b.row([(pr, 1.0), (np_, -hi)], "L", 0.0, f"pcap_max[{tag}]")
            if lo > 0:
                b.row([(pr, 1.0), (np_, -lo)], "G", 0.0, f"pcap_min[{tag}]")
    for sto, j, g in product(st.storages, st.sizes, st.grids):
        _chain(b, T, "NS", "NSnew", (sto, j, g), "ns_chain")
    for fs, j, g in product(st.stations, st.sizes, st.grids):
        _chain(b, T, "NFS", "NFSnew", (fs, j, g), "nfs_chain")
    for i, g, t, m in product(st.forms, st.grids, T, M):
        terms = [(b.v("ST", i, g, t, m), 1.0)]
        terms += [(b.v("NS", i, j, g, t), -s.tech.storage_capacity[(i, j)])
                  for j in st.sizes if i in st.storages]
        b.row(terms, "L", 0.0, f"stor_cap[{i},{g},{t},{m}]")
    for fs, j, g, t, m in product(st.stations, st.sizes, st.grids, T, M):
        b.row([(b.v("FR", fs, j, fs, g, t, m), 1.0), (b.v("NFS", fs, j, g, t), -s.tech.station_capacity[(fs, j)])],
              "L", 0.0, f"station_cap[{fs},{j},{g},{t},{m}]")
    for i, g in product(st.forms, st.grids):
        _chain(b, T, "CONVCAP", "CONVNEW", (i, g), "conv_chain")


def add_geography(b: InstanceBuilder, ctx: ModelContext) -> None:
    """Site and direction restrictions, as zero upper bounds."""
    s, st = ctx.s, ctx.s.sets
    geo = s.geo
    for p, j, i, g, t in product(st.techs, st.sizes, st.forms, st.grids, st.periods):
        banned = geo.production_ban.get((p, j, i, g, t), 0)
        if banned or (geo.central_only_size[j] and not geo.central_grid[g]):
            b.set_ub(b.v("IP", p, j, i, g, t), 0)
    # a unit count is zero as long as nothing could have been installed yet
    for p, j, i, g in product(st.techs, st.sizes, st.forms, st.grids):
        open_ = False
        for t in st.periods:
            open_ = open_ or b.ub(b.v("IP", p, j, i, g, t)) > 0
            if not open_:
                b.set_ub(b.v("NP", p, j, i, g, t), 0)
    for g, m, e in product(st.grids, st.months, st.sources):
        allowed = {"PV": s.energy.pv_allowed[g], "Wind": s.energy.wind_allowed[g]}.get(e, 0)
        if not allowed:
            b.set_ub(b.v("ESP", g, m, e), 0)
    for (i, l), (g, h), t in product(ctx.routes, ctx.pairs, st.periods):
        if geo.export_ban[g]:
            for name in ("XE", "EPSILON"):
                b.set_ub(b.v(name, i, l, g, h, t), 0)
            for m in st.months:
                b.set_ub(b.v("Q", i, l, g, h, t, m), 0)
                b.set_ub(b.v("NTUGRID", i, l, g, h, t, m), 0)
    for fs, j, g, t in product(st.stations, st.sizes, st.grids, st.periods):
        if not geo.demand_grid[g]:
            b.set_ub(b.v("NFSnew", fs, j, g, t), 0)
            b.set_ub(b.v("NFS", fs, j, g, t), 0)


def add_transport_linking(b: InstanceBuilder, ctx: ModelContext) -> None:
    """Integer truck counts from shipped quantities, one-way flows, retrofit fuel."""
    s, st = ctx.s, ctx.s.sets
    for (i, l), (g, h), t in product(ctx.routes, ctx.pairs, st.periods):
        tag = f"{i},{l},{g},{h},{t}"
        xe, eps = b.v("XE", i, l, g, h, t), b.v("EPSILON", i, l, g, h, t)
        f = ctx.tf[(i, l, g, h)]
        for m in st.months:
            q, n = b.v("Q", i, l, g, h, t, m), b.v("NTUGRID", i, l, g, h, t, m)
            b.row([(n, 1.0), (q, -f)], "G", 0.0, f"trucks_lo[{tag},{m}]")
            b.row([(n, 1.0), (q, -f), (eps, -1.0)], "L", 0.0, f"trucks_hi[{tag},{m}]")
            b.row([(q, 1.0), (xe, -ctx.flow_bound[t])], "L", 0.0, f"flow_on[{tag},{m}]")
        b.row([(eps, 1.0), (xe, -1.0)], "L", 0.0, f"round_on[{tag}]")
        if g < h:
            b.row([(xe, 1.0), (b.v("XE", i, l, h, g, t), 1.0)], "L", 1.0, f"one_way[{tag}]")
    if ctx.retrofit:
        for i, g, t, m in product(st.forms, st.grids, st.periods, st.months):
            terms = [(b.v("DRETROFIT", i, g, t, m), 1.0)]
            for (ri, l), (a, h) in product(ctx.routes, ctx.pairs):
                if ri == i and a == g:
                    terms.append((b.v("NTUGRID", i, l, g, h, t, m), -retrofit_use_per_truck(s, g, h)))
            b.row(terms, "E", 0.0, f"retrofit[{i},{g},{t},{m}]")


def _exports(b, ctx, i, g, t, m, sign=1.0):
    return [(b.v("Q", i, l, g, h, t, m), sign) for (ri, l), (a, h) in product(ctx.routes, ctx.pairs) if ri == i and a == g]


def _imports(b, ctx, i, g, t, m, sign=1.0):
    return [(b.v("Q", i, l, a, g, t, m), sign) for (ri, l), (a, h) in product(ctx.routes, ctx.pairs) if ri == i and h == g]


def add_balances(b: InstanceBuilder, ctx: ModelContext) -> None:
    """Mass, demand, storage autonomy, energy, conversion and water rows."""
    s, st = ctx.s, ctx.s.sets
    tc, en = s.tech, s.energy
    autonomy = s.options.storage_autonomy_days
    for g, t, m in product(st.grids, st.periods, st.months):
        cell = f"{g},{t},{m}"
        for i in st.forms:
            terms = [(b.v("PR", p, j, i, g, t, m), 1.0) for p, j in product(st.techs, st.sizes)]
            terms += _imports(b, ctx, i, g, t, m, 1.0) + _exports(b, ctx, i, g, t, m, -1.0)
            if i in st.stations:
                terms += [(b.v("FR", i, j, i, g, t, m), -1.0) for j in st.sizes]
            if ctx.retrofit:
                terms.append((b.v("DRETROFIT", i, g, t, m), -1.0))
            b.row(terms, "E", 0.0, f"mass[{i},{cell}]")
            st_terms = [(b.v("ST", i, g, t, m), 1.0)]
            if i in st.stations:
                st_terms += [(b.v("FR", i, j, i, g, t, m), -autonomy) for j in st.sizes]
            b.row(st_terms, "E", 0.0, f"autonomy[{i},{cell}]")
        b.row([(b.v("FR", fs, j, fs, g, t, m), 1.0) for fs, j in product(st.stations, st.sizes)],
              "E", ctx.dh2[(g, t, m)], f"demand[{cell}]")

        # electricity: electrolysis, liquefaction of liquid output, compression of gas exports
        terms = [(b.v("ESU", g, t, m), 1.0)]
        for p, j, i in product(st.techs, st.sizes, st.forms):
            coef = en.electricity_use[(p, j)] + (tc.conversion_energy[i] if i == "liquid" else 0.0)
            terms.append((b.v("PR", p, j, i, g, t, m), -coef))
        if "gas" in st.forms:
            terms += _exports(b, ctx, "gas", g, t, m, -tc.conversion_energy["gas"])
        b.row(terms, "E", 0.0, f"energy_use[{cell}]")
        b.row([(b.v("ESU", g, t, m), 1.0)] + [(b.v("ESUE", e, g, t, m), -1.0) for e in st.sources],
              "E", 0.0, f"energy_split[{cell}]")
        for e in st.sources:
            b.row([(b.v("ESUE", e, g, t, m), 1.0 + en.consumption_margin),
                   (b.v("ESP", g, m, e), -availability_per_kw(s, t, m, e))],
                  "L", 0.0, f"energy_avail[{e},{cell}]")

        for i in st.forms:
            if i == "gas":
                flow = _exports(b, ctx, i, g, t, m, -1.0)
            else:
                flow = [(b.v("PR", p, j, i, g, t, m), -1.0) for p, j in product(st.techs, st.sizes)]
            if flow:
                b.row([(b.v("CONVCAP", i, g, t), 1.0)] + flow, "G", 0.0, f"conv_cap[{i},{cell}]")

        terms = [(b.v("WATERCONS", g, t, m), 1.0)]
        terms += [(b.v("PR", p, j, i, g, t, m), -s.water.water_per_kg / 1000.0)
                  for p, j, i in product(st.techs, st.sizes, st.forms)]
        b.row(terms, "E", 0.0, f"water_use[{cell}]")
        if ctx.water_active:
            vul = water_vulnerability(s, g, m)[1]
            b.row([(b.v("WCV", g, t, m), 1.0), (b.v("WATERCONS", g, t, m), -ctx.nd(m) * vul)],
                  "E", 0.0, f"water_indexed[{cell}]")
    for t in st.periods:
        terms = [(b.v("WATERCOST", t), 1.0)]
        terms += [(b.v("WATERCONS", g, t, m), -s.water.water_price * ctx.nd(m) / 365.0)
                  for g, m in product(st.grids, st.months)]
        b.row(terms, "E", 0.0, f"water_cost[{t}]")
