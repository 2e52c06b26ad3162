"""Build a complete instance for one primary objective with optional epsilon rows."""
from __future__ import annotations

import logging
import math

from ..scenario.types import Scenario
from .build import (
    add_balances, add_capacity_linking, add_geography, add_transport_linking, declare_variables, make_context,
)
from .instance import InstanceBuilder, MilpInstance, ModelError
from .objectives import EXPRESSIONS, delivered_expression, total_days

log = logging.getLogger(__name__)

OBJECTIVES = ("cost", "ghg", "risk")


def assemble(s: Scenario, objective: str = "cost", eps: dict[str, float] | None = None) -> MilpInstance:
    """Assemble the MILP minimizing ``objective``.

    ``eps`` maps the other objective names to upper bounds (in reporting
    units); an infinite bound yields a vacuous row.
    """
    if objective not in OBJECTIVES:
        raise ModelError(f"unknown objective {objective!r}")
    eps = dict(eps or {})
    if objective in eps:
        raise ModelError(f"cannot bound the primary objective {objective!r}")
    unknown = set(eps) - set(OBJECTIVES)
    if unknown:
        raise ModelError(f"unknown epsilon keys {sorted(unknown)}")

    ctx = make_context(s)
    b = InstanceBuilder()
    declare_variables(b, ctx)
    add_geography(b, ctx)
    add_capacity_linking(b, ctx)
    add_transport_linking(b, ctx)
    add_balances(b, ctx)

    exprs = {name: build(b, ctx) for name, build in EXPRESSIONS.items()}
    b.objective = objective
    b.c = exprs[objective].vector.copy()
    b.c0 = exprs[objective].constant
    for name in OBJECTIVES:
        if name in eps:
            bound = float(eps[name])
            if math.isnan(bound):
                raise ModelError(f"epsilon for {name} is NaN")
            terms = [(j, a) for j, a in enumerate(exprs[name].vector) if a != 0.0]
            b.row(terms, "L", bound - exprs[name].constant, f"eps_{name}")
            b.eps[name] = bound

    b.meta.update(
        scenario=s.name,
        expressions=exprs,
        delivered=delivered_expression(b, ctx),
        total_days=total_days(ctx),
        context=ctx,
    )
    inst = b.freeze()
    inst.check()
    log.info("assembled %s: %d variables (%d integer), %d rows, %d nonzeros",
             s.name, inst.n, int(inst.integer.sum()), inst.m, inst.A.nnz)
    return inst
