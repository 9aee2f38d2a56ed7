# app/solvers/cfr.py
"""
Vanilla counterfactual regret minimization.

Every iteration walks the whole tree: the current policy comes from regret
matching, both players' regrets are updated from the same policy, and the
strategy sums are weighted by each player's own reach. Own reach is measured
from the roots of the solved game, so roots with zero outside reach still
accumulate an average strategy.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Set

import numpy as np

from app.games.base import PLAYERS
from app.games.evaluation import reach_arrays, subtree_values
from app.games.profile import StrategyProfile, uniform_probabilities
from app.games.tree import GameDefinition
from app.games.types import InfosetKey
from app.solvers.accumulators import AccumulatorTable
from app.solvers.best_response import exploitability
from app.solvers.regret import regret_matching_slots
from app.solvers.values import action_value_arrays

logger = logging.getLogger(__name__)


@dataclass
class TracePoint:
    iteration: int
    exploitability: float
    elapsed_seconds: float


@dataclass
class SolveResult:
    profile: StrategyProfile
    table: AccumulatorTable
    trace: List[TracePoint] = field(default_factory=list)


def checkpoints(iterations: int, eval_every: Optional[int] = None) -> Set[int]:
    """
    Iterations at which to evaluate: powers of two plus the last one by
    default, every `eval_every` iterations plus the last one otherwise, and
    none when `eval_every` is 0.
    """
    if eval_every == 0:
        return set()
    if eval_every is None:
        points = set()
        power = 1
        while power <= iterations:
            points.add(power)
            power *= 2
    else:
        points = set(range(eval_every, iterations + 1, eval_every))
    points.add(iterations)
    return points


class CFRSolver:
    """
    CFR on one game.

    `subset` restricts learning to the named information sets; every other
    information set keeps following `fixed` (uniform by default).
    """

    def __init__(
        self,
        game: GameDefinition,
        table: Optional[AccumulatorTable] = None,
        subset: Optional[Iterable[InfosetKey]] = None,
        fixed: Optional[StrategyProfile] = None,
    ):
        self.game = game
        self.table = table if table is not None else AccumulatorTable(game)
        self._unit_roots = np.ones_like(game.root_reach)
        self._learning = None
        self._fixed = None
        if subset is not None:
            learning = np.zeros(game.num_infosets, dtype=bool)
            for key in subset:
                learning[game.infoset_of(key).index] = True
            self._learning = learning[game.slot_infoset]
            self._fixed = fixed.probs if fixed is not None else uniform_probabilities(game)

    @property
    def iterations(self) -> int:
        return self.table.iterations

    def current_probs(self) -> np.ndarray:
        probs = regret_matching_slots(self.game, self.table.regret)
        if self._learning is not None:
            probs = np.where(self._learning, probs, self._fixed)
        return probs

    def iterate(self, leaf_values: Optional[np.ndarray] = None) -> np.ndarray:
        """
        One simultaneous CFR update. Returns the player1 subtree values of the
        current policy so callers can read root values.
        """
        game = self.game
        probs = self.current_probs()
        reach = reach_arrays(game, probs)
        own = reach if game.unit_roots else reach_arrays(game, probs, self._unit_roots)
        values = subtree_values(game, probs, leaf_values)

        action_values = np.zeros(game.num_slots)
        for player in PLAYERS:
            player_values, _ = action_value_arrays(game, probs, player, reach, values)
            action_values += player_values
        infoset_values = np.bincount(game.slot_infoset, weights=probs * action_values, minlength=game.num_infosets)
        regret = action_values - infoset_values[game.slot_infoset]

        rep = game.infoset_rep
        own_reach = own[rep, game.infoset_player][game.slot_infoset]
        if self._learning is not None:
            regret = np.where(self._learning, regret, 0.0)
        self.table.regret += regret
        self.table.strategy_weight += own_reach * probs
        self.table.iterations += 1
        return values

    def average_profile(self) -> StrategyProfile:
        probs = self.table.average_probs()
        if self._learning is not None:
            probs = np.where(self._learning, probs, self._fixed)
        return StrategyProfile(self.game, probs)

    def solve(
        self,
        iterations: int,
        eval_every: Optional[int] = None,
        on_checkpoint: Optional[Callable[[TracePoint], None]] = None,
    ) -> SolveResult:
        if iterations < 1:
            raise ValueError("CFR needs at least 1 iteration")
        points = checkpoints(iterations, eval_every)
        trace: List[TracePoint] = []
        started = time.perf_counter()
        for step in range(1, iterations + 1):
            self.iterate()
            if step in points:
                point = TracePoint(
                    iteration=self.iterations,
                    exploitability=exploitability(self.game, self.average_profile()),
                    elapsed_seconds=time.perf_counter() - started,
                )
                trace.append(point)
                logger.info(
                    f"{self.game.name} iteration {point.iteration}: "
                    f"exploitability {point.exploitability:.6g} ({point.elapsed_seconds:.1f}s)"
                )
                if on_checkpoint is not None:
                    on_checkpoint(point)
        return SolveResult(profile=self.average_profile(), table=self.table, trace=trace)


def cfr_solve(
    game: GameDefinition,
    iterations: int,
    subset: Optional[Iterable[InfosetKey]] = None,
    fixed: Optional[StrategyProfile] = None,
    eval_every: Optional[int] = 0,
) -> SolveResult:
    """
    Deterministic full-tree CFR.

    Returns the normalized average profile, the accumulator table and the
    exploitability trace (empty unless `eval_every` asks for checkpoints).
    """
    return CFRSolver(game, subset=subset, fixed=fixed).solve(iterations, eval_every=eval_every)
