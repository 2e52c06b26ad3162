from .pareto import CRITERIA, ParetoFront, ParetoPoint, dominates, pareto_filter
from .sweep import SweepError, eps_grid, epsilon_sweep, jobs_from_env, payoff_table
from .topsis import RankingResult, mtopsis_rank

__all__ = [
    "CRITERIA", "ParetoFront", "ParetoPoint", "dominates", "pareto_filter", "SweepError", "eps_grid",
    "epsilon_sweep", "jobs_from_env", "payoff_table", "RankingResult", "mtopsis_rank",
]
