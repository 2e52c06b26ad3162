"""Independent references used by the tests (no code shared with the package solvers)."""
from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from h2supply.model import family_values


def dense_lp(c, A, lo, hi, lb, ub):
    """Reference LP value via HiGHS on dense data: min c.x, lo <= A x <= hi, lb <= x <= ub."""
    A = np.asarray(A, float)
    up, dn = np.isfinite(hi), np.isfinite(lo)
    A_ub = np.vstack([A[up], -A[dn]])
    b_ub = np.concatenate([hi[up], -lo[dn]])
    res = linprog(c, A_ub=A_ub if len(b_ub) else None, b_ub=b_ub if len(b_ub) else None,
                  bounds=list(zip(lb, ub)), method="highs")
    return res


def pairwise_nondominated(points):
    """O(n^2) nondominated set (as tuples, duplicates kept once)."""
    pts = [tuple(map(float, p)) for p in points]
    out = []
    for a in pts:
        dominated = any(all(x <= y for x, y in zip(b, a)) and any(x < y for x, y in zip(b, a)) for b in pts)
        if not dominated and a not in out:
            out.append(a)
    return sorted(out)


def lcoh_from_parts(s, inst, x):
    """LCOH with f = dr = 0 recomputed from raw scenario tables and solution families:
    (sum capex + sum daily opex * days) / sum delivered kg."""
    tc, en, st = s.tech, s.energy, s.sets
    fam = lambda name: family_values(inst, x, name)
    years = tc.years_per_period
    nd = en.month_days

    capex = sum(n * tc.electrolyzer_capex[(p, j, i)] * tc.electrolyzer_power[(p, j, i)]
                for (p, j, i, g, t), n in fam("IP").items())
    capex += sum(n * tc.storage_capex[(k, j)] * tc.storage_capacity[(k, j)] for (k, j, g, t), n in fam("NSnew").items())
    capex += sum(n * tc.station_capex[(k, j)] for (k, j, g, t), n in fam("NFSnew").items())
    capex += sum(n * tc.conversion_capex[i] for (i, g, t), n in fam("CONVNEW").items())

    opex = 0.0  # EUR, daily rates times the days they apply to
    for (p, j, i, g, t, m), kg in fam("PR").items():
        gamma = en.electricity_use[(p, j)]
        stack = tc.stack_share * tc.electrolyzer_capex[(p, j, i)] * gamma / tc.stack_lifetime[p]
        rate = tc.electrolyzer_opex[(p, j, i)] + stack + (tc.conversion_opex[i] if i == "liquid" else 0.0)
        opex += kg * rate * years[t] * nd[m]
    for (e, g, t, m), kwh in fam("ESUE").items():
        opex += kwh * en.electricity_price[(e, t)] * years[t] * nd[m]
    for (g, t, m), m3 in fam("WATERCONS").items():
        opex += m3 * s.water.water_price * years[t] * nd[m]
    for (k, j, g, t), n in fam("NS").items():
        opex += n * tc.storage_opex[(k, j)] * tc.storage_capacity[(k, j)] * years[t] * sum(nd[m] for m in st.months)
    for (k, j, k2, g, t, m), kg in fam("FR").items():
        if k == k2:
            opex += kg * tc.station_opex[(k, j)] * years[t] * nd[m]
    retro = s.options.retrofit
    for (i, l, g, h, t, m), q in fam("Q").items():
        km = 2.0 * tc.distance[(g, h)]
        fuel = tc.retrofit_fuel_cost_km[l] if retro else tc.fuel_cost_km[l]
        maint = tc.retrofit_maintenance_km[l] if retro else tc.maintenance_km[l]
        hours = km / tc.truck_speed[l] + tc.handling_time[l]
        per_kg = (tc.driver_wage * hours + (fuel + maint) * km) / tc.truck_capacity[(i, l)]
        if i == "gas":
            per_kg += tc.conversion_opex[i]
        opex += q * per_kg * years[t] * nd[m]
    for (i, l, g, h, t, m), n in fam("NTUGRID").items():
        truck = tc.retrofit_capex[l] if retro else tc.truck_capex[(i, l)]
        opex += n * (tc.general_cost_day[l] + truck / (tc.truck_lifetime * 365.0)) * years[t] * nd[m]

    from h2supply.demand import hydrogen_demand
    kg = sum(hydrogen_demand(s, g, t, m) * years[t] * nd[m] for g in st.grids for t in st.periods for m in st.months)
    kg += sum(v * years[t] * nd[m] for (i, g, t, m), v in fam("DRETROFIT").items())
    return (capex + opex) / kg
