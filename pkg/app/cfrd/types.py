# app/cfrd/types.py
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from app.games.base import PLAYERS
from app.games.profile import StrategyProfile
from app.games.types import InfosetKey
from app.solvers.accumulators import AccumulatorRegistry, AccumulatorTable
from app.solvers.cfr import TracePoint
from app.solvers.values import CfvVector


@dataclass
class TrunkState:
    """
    Everything CFR-D keeps between iterations: the trunk accumulators and
    the running sums of root counterfactual values.
    """

    table: AccumulatorTable
    cfv_sums: Dict[int, Dict[InfosetKey, float]] = field(
        default_factory=lambda: {player: {} for player in PLAYERS}
    )
    iterations: int = 0

    def accumulate(self, cfvs: Dict[int, CfvVector]) -> None:
        for player, vector in cfvs.items():
            sums = self.cfv_sums[player]
            for key, value in vector.values.items():
                sums[key] = sums.get(key, 0.0) + value

    def avg_cfv(self, player: int) -> CfvVector:
        if self.iterations == 0:
            return CfvVector(player=player)
        return CfvVector(
            player=player,
            values={key: total / self.iterations for key, total in self.cfv_sums[player].items()},
        )

    def avg_cfvs(self) -> Dict[int, CfvVector]:
        return {player: self.avg_cfv(player) for player in PLAYERS}


@dataclass
class RegretBoundReport:
    """
    Regret bound for CFR-D after T trunk iterations:
    N_TR * sqrt(A * T) / T + N_S * eps_S.

    `scaled_bound` multiplies the trunk term by the game's utility range,
    which the regret-matching guarantee carries for games whose payoffs are
    not confined to [0, 1].
    """

    n_trunk: int
    n_roots: int
    max_actions: int
    iterations: int
    eps_s: float
    utility_range: float = 1.0

    @property
    def trunk_term(self) -> float:
        if self.iterations == 0:
            return math.inf
        return self.n_trunk * math.sqrt(self.max_actions * self.iterations) / self.iterations

    @property
    def bound(self) -> float:
        return self.trunk_term + self.n_roots * self.eps_s

    @property
    def scaled_bound(self) -> float:
        return self.utility_range * self.trunk_term + self.n_roots * self.eps_s


@dataclass
class SubgameSolution:
    index: int
    cfvs: Dict[int, CfvVector]
    root_values: np.ndarray
    eps_s: float
    entries: int
    profile: Optional[StrategyProfile] = None


@dataclass
class CFRDResult:
    trunk_profile: StrategyProfile
    cfvs: Dict[int, CfvVector]
    report: RegretBoundReport
    state: TrunkState
    registry: AccumulatorRegistry
    trace: List[TracePoint] = field(default_factory=list)
