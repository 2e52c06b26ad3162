from .assemble import OBJECTIVES, assemble
from .build import (
    ModelContext, add_balances, add_capacity_linking, add_geography, add_transport_linking, declare_variables,
    make_context, production_bounds, retrofit_use_per_truck, trip_factor,
)
from .instance import INTEGER_FAMILIES, Expression, InstanceBuilder, MilpInstance, ModelError, VariableIndex
from .kpi import evaluate, family_values, lcoh, objective_values, water_withdrawal
from .objectives import (
    CAPEX_COMPONENTS, capex_weight, cost_expression, ghg_expression, objective_cost, objective_ghg,
    objective_risk, opex_weight, risk_expression, total_days,
)

__all__ = [
    "OBJECTIVES", "assemble", "ModelContext", "add_balances", "add_capacity_linking", "add_geography",
    "add_transport_linking", "declare_variables", "make_context", "production_bounds",
    "retrofit_use_per_truck", "trip_factor", "INTEGER_FAMILIES", "Expression", "InstanceBuilder",
    "MilpInstance", "ModelError", "VariableIndex", "evaluate", "family_values", "lcoh", "objective_values",
    "water_withdrawal", "CAPEX_COMPONENTS", "capex_weight", "cost_expression", "ghg_expression",
    "objective_cost", "objective_ghg", "objective_risk", "opex_weight", "risk_expression", "total_days",
]
