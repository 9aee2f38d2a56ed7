from app.solvers.accumulators import AccumulatorRegistry, AccumulatorTable
from app.solvers.best_response import (
    best_response_value,
    counterfactual_best_response,
    exploitability,
)
from app.solvers.cfr import CFRSolver, SolveResult, TracePoint, cfr_solve
from app.solvers.regret import regret_matching
from app.solvers.values import CfvVector, counterfactual_values

__all__ = [
    "AccumulatorRegistry",
    "AccumulatorTable",
    "CFRSolver",
    "CfvVector",
    "SolveResult",
    "TracePoint",
    "best_response_value",
    "cfr_solve",
    "counterfactual_best_response",
    "counterfactual_values",
    "exploitability",
    "regret_matching",
]
