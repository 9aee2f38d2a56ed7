from app.cfrd.algorithm import CFRDRun, cfr_d, lift_trunk_probs
from app.cfrd.recover import recover_full
from app.cfrd.subgame import solve_subgame_mutual_cbr
from app.cfrd.types import CFRDResult, RegretBoundReport, SubgameSolution, TrunkState

__all__ = [
    "CFRDResult",
    "CFRDRun",
    "RegretBoundReport",
    "SubgameSolution",
    "TrunkState",
    "cfr_d",
    "lift_trunk_probs",
    "recover_full",
    "solve_subgame_mutual_cbr",
]
