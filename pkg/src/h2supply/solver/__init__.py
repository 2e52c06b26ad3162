from .bnb import BnbOptions, MilpSolution, polish, solve_milp
from .config import DEFAULT, Tolerances
from .highs import solve_highs
from .lp import Basis, LpEngine, LpError, LpSolution, solve_lp
from .mps import MpsError, export_mps, parse_mps, write_mps
from .oracle import DomainTooLarge, domain_product, enumerate_oracle

BACKENDS = {"bnb": solve_milp, "highs": solve_highs}


def solve(inst, backend: str = "bnb", opts: BnbOptions | None = None, starts=()) -> MilpSolution:
    """Dispatch to a MILP backend by name; ``starts`` only seed the in-repo solver."""
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; choose from {sorted(BACKENDS)}")
    if backend == "bnb":
        return solve_milp(inst, opts, starts=starts)
    return BACKENDS[backend](inst, opts)


__all__ = [
    "BnbOptions", "MilpSolution", "polish", "solve_milp", "DEFAULT", "Tolerances", "solve_highs", "Basis",
    "LpEngine", "LpError", "LpSolution", "solve_lp", "MpsError", "export_mps", "parse_mps", "write_mps",
    "DomainTooLarge", "domain_product", "enumerate_oracle", "BACKENDS", "solve",
]
