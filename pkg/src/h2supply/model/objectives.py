"""Cost, GHG and risk expressions of the supply chain model.

All three are linear in the decision vector and kept as named component
vectors so reports can break them down by subsystem.  Reporting units:
cost in kEUR/day (total discounted cost spread over the modeled days),
GHG in tCO2e/day, risk as a dimensionless index per day; the last two are
day-weighted averages over periods and months.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from .build import ModelContext
from .instance import Expression, InstanceBuilder, ModelError

SUBSYSTEM = {
    "production_capex": "production", "production_opex": "production", "electricity": "production",
    "water": "production", "conversion_capex": "production", "conversion_opex": "production",
    "storage_capex": "storage", "storage_opex": "storage",
    "station_capex": "transport", "station_opex": "transport",
    "transport_opex": "transport", "transport_capital": "transport",
    "production_ghg": "production", "storage_ghg": "storage", "transport_ghg": "transport",
    "production_risk": "production", "storage_risk": "storage", "transport_risk": "transport",
}
CAPEX_COMPONENTS = ("production_capex", "storage_capex", "station_capex", "conversion_capex")


def year_offset(ctx: ModelContext, t) -> int:
    """Years elapsed between the first period and period ``t``."""
    st = ctx.s.sets
    return st.year_of(t) - st.years[0]


def discount_base(ctx: ModelContext) -> float:
    tc = ctx.s.tech
    return (1.0 + tc.inflation_rate) * (1.0 + tc.discount_rate)


def capex_weight(ctx: ModelContext, t) -> float:
    """Discount applied to investments, made at the start of the period's first year."""
    return discount_base(ctx) ** -year_offset(ctx, t)


def opex_weight(ctx: ModelContext, t) -> float:
    """Discounted number of years an operating day of period ``t`` is repeated."""
    years = ctx.s.tech.years_per_period[t]
    d, n0 = discount_base(ctx), year_offset(ctx, t)
    w, k = 0.0, 0
    while k < years:
        w += min(1.0, years - k) * d ** -(n0 + k)
        k += 1
    return w


def total_days(ctx: ModelContext) -> float:
    st = ctx.s.sets
    return sum(ctx.s.tech.years_per_period[t] for t in st.periods) * sum(ctx.nd(m) for m in st.months)


def day_weight(ctx: ModelContext, t, m) -> float:
    """Share of the modeled horizon's days falling in (t, m)."""
    return ctx.s.tech.years_per_period[t] * ctx.nd(m) / total_days(ctx)


def stack_surcharge(ctx: ModelContext, p, j, i) -> float:
    """Per-kg charge amortizing stack replacement over the stack lifetime."""
    tc = ctx.s.tech
    gamma = ctx.s.energy.electricity_use[(p, j)]
    return tc.stack_share * tc.electrolyzer_capex[(p, j, i)] * gamma / tc.stack_lifetime[p]


class _Acc:
    def __init__(self, b: InstanceBuilder, names):
        self.b = b
        self.vec = {k: np.zeros(b.n) for k in names}

    def add(self, comp, idx, coef):
        self.vec[comp][idx] += coef


def _truck_params(ctx: ModelContext, i, l):
    tc = ctx.s.tech
    if ctx.retrofit:
        return tc.retrofit_fuel_cost_km[l], tc.retrofit_maintenance_km[l], tc.retrofit_capex[l], tc.retrofit_ghg_km[l]
    return tc.fuel_cost_km[l], tc.maintenance_km[l], tc.truck_capex[(i, l)], tc.truck_ghg_km[l]


def cost_expression(b: InstanceBuilder, ctx: ModelContext) -> Expression:
    s, st = ctx.s, ctx.s.sets
    tc, en = s.tech, s.energy
    acc = _Acc(b, ["production_capex", "storage_capex", "station_capex", "conversion_capex",
                   "production_opex", "electricity", "water", "storage_opex", "station_opex",
                   "conversion_opex", "transport_opex", "transport_capital"])
    v = b.v
    scale = 1.0 / (1000.0 * total_days(ctx))
    for t in st.periods:
        cw = capex_weight(ctx, t) * scale
        for p, j, i, g in product(st.techs, st.sizes, st.forms, st.grids):
            acc.add("production_capex", v("IP", p, j, i, g, t), cw * tc.electrolyzer_capex[(p, j, i)] * tc.electrolyzer_power[(p, j, i)])
        for sto, j, g in product(st.storages, st.sizes, st.grids):
            acc.add("storage_capex", v("NSnew", sto, j, g, t), cw * tc.storage_capex[(sto, j)] * tc.storage_capacity[(sto, j)])
        for fs, j, g in product(st.stations, st.sizes, st.grids):
            acc.add("station_capex", v("NFSnew", fs, j, g, t), cw * tc.station_capex[(fs, j)])
        for i, g in product(st.forms, st.grids):
            acc.add("conversion_capex", v("CONVNEW", i, g, t), cw * tc.conversion_capex[i])
        ow = opex_weight(ctx, t) * scale
        acc.add("water", v("WATERCOST", t), ow * 365.0)
        for m in st.months:
            w = ow * ctx.nd(m)
            for g in st.grids:
                for p, j, i in product(st.techs, st.sizes, st.forms):
                    pr = v("PR", p, j, i, g, t, m)
                    acc.add("production_opex", pr, w * (tc.electrolyzer_opex[(p, j, i)] + stack_surcharge(ctx, p, j, i)))
                    if i == "liquid":
                        acc.add("conversion_opex", pr, w * tc.conversion_opex[i])
                for e in st.sources:
                    acc.add("electricity", v("ESUE", e, g, t, m), w * en.electricity_price[(e, t)])
                for sto, j in product(st.storages, st.sizes):
                    acc.add("storage_opex", v("NS", sto, j, g, t), w * tc.storage_opex[(sto, j)] * tc.storage_capacity[(sto, j)])
                for fs, j in product(st.stations, st.sizes):
                    acc.add("station_opex", v("FR", fs, j, fs, g, t, m), w * tc.station_opex[(fs, j)])
            for (i, l), (g, h) in product(ctx.routes, ctx.pairs):
                fuel, maint, capex, _ = _truck_params(ctx, i, l)
                km = 2.0 * tc.distance[(g, h)]
                hours = km / tc.truck_speed[l] + tc.handling_time[l]
                per_kg = (tc.driver_wage * hours + (fuel + maint) * km) / tc.truck_capacity[(i, l)]
                q = v("Q", i, l, g, h, t, m)
                acc.add("transport_opex", q, w * per_kg)
                if i == "gas":
                    acc.add("conversion_opex", q, w * tc.conversion_opex[i])
                n = v("NTUGRID", i, l, g, h, t, m)
                acc.add("transport_opex", n, w * tc.general_cost_day[l])
                acc.add("transport_capital", n, w * capex / (tc.truck_lifetime * 365.0))
    return Expression(acc.vec)


def ghg_expression(b: InstanceBuilder, ctx: ModelContext) -> Expression:
    s, st = ctx.s, ctx.s.sets
    tc, en = s.tech, s.energy
    acc = _Acc(b, ["production_ghg", "storage_ghg", "transport_ghg"])
    v = b.v
    for t, m in product(st.periods, st.months):
        w = day_weight(ctx, t, m) / 1000.0
        for g in st.grids:
            for e in st.sources:
                acc.add("production_ghg", v("ESUE", e, g, t, m), w * en.electricity_ghg[e])
            for p, j, i in product(st.techs, st.sizes, st.forms):
                acc.add("production_ghg", v("NP", p, j, i, g, t), w * tc.production_ghg_unit[(p, j)])
            for sto, j in product(st.storages, st.sizes):
                acc.add("storage_ghg", v("NS", sto, j, g, t), w * tc.storage_ghg_unit[(sto, j)])
            for i in st.forms:
                if i in st.storages:
                    acc.add("storage_ghg", v("ST", i, g, t, m), w * tc.storage_ghg_kg[i])
        for (i, l), (g, h) in product(ctx.routes, ctx.pairs):
            km_per_kg = 2.0 * tc.distance[(g, h)] / tc.truck_capacity[(i, l)]
            acc.add("transport_ghg", v("Q", i, l, g, h, t, m), w * km_per_kg * _truck_params(ctx, i, l)[3])
    return Expression(acc.vec)


def risk_expression(b: InstanceBuilder, ctx: ModelContext) -> Expression:
    s, st = ctx.s, ctx.s.sets
    tc = s.tech
    acc = _Acc(b, ["production_risk", "storage_risk", "transport_risk"])
    v = b.v
    for t, m in product(st.periods, st.months):
        w = day_weight(ctx, t, m)
        for g in st.grids:
            for p, j, i in product(st.techs, st.sizes, st.forms):
                acc.add("production_risk", v("NP", p, j, i, g, t), w * tc.production_risk_unit[(p, j)])
            for sto, j in product(st.storages, st.sizes):
                acc.add("storage_risk", v("NS", sto, j, g, t), w * tc.storage_risk_unit[(sto, j)])
        for (i, l), (g, h) in product(ctx.routes, ctx.pairs):
            acc.add("transport_risk", v("NTUGRID", i, l, g, h, t, m), w * tc.truck_risk_unit[l])
    return Expression(acc.vec)


def delivered_expression(b: InstanceBuilder, ctx: ModelContext) -> Expression:
    """Discounted kg delivered over the horizon, the LCOH denominator."""
    st = ctx.s.sets
    vec = np.zeros(b.n)
    const = 0.0
    for t, m in product(st.periods, st.months):
        w = opex_weight(ctx, t) * ctx.nd(m)
        const += w * sum(ctx.dh2[(g, t, m)] for g in st.grids)
        if ctx.retrofit:
            for i, g in product(st.forms, st.grids):
                vec[b.v("DRETROFIT", i, g, t, m)] += w
    return Expression({"delivered": vec}, const)


EXPRESSIONS = {"cost": cost_expression, "ghg": ghg_expression, "risk": risk_expression}


def _set_objective(b: InstanceBuilder, name: str, expr: Expression) -> None:
    if b.objective is not None:
        raise ModelError(f"objective already set to {b.objective!r}")
    b.objective = name
    b.c = expr.vector.copy()
    b.c0 = expr.constant


def objective_cost(b: InstanceBuilder, ctx: ModelContext) -> None:
    _set_objective(b, "cost", cost_expression(b, ctx))


def objective_ghg(b: InstanceBuilder, ctx: ModelContext) -> None:
    _set_objective(b, "ghg", ghg_expression(b, ctx))


def objective_risk(b: InstanceBuilder, ctx: ModelContext) -> None:
    _set_objective(b, "risk", risk_expression(b, ctx))
