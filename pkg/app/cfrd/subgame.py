# app/cfrd/subgame.py
"""
Subgame solving inside CFR-D.

The subgame is solved as a forest whose roots carry the trunk's reach, with
CFR, which drives both players towards counterfactual best responses to each
other. Only the root counterfactual values and the players' expected values
at the roots leave this module; the interior strategy is dropped.
"""
import dataclasses
import logging
from typing import Dict, Optional

import numpy as np

from app.cfrd.types import SubgameSolution
from app.decomposition.partition import SubgamePartition, subgame_forest
from app.games.base import PLAYERS
from app.games.evaluation import ProbsLike, reach_arrays, reach_without, sign, subtree_values
from app.games.profile import StrategyProfile
from app.games.tree import GameDefinition
from app.solvers.accumulators import AccumulatorRegistry, AccumulatorTable
from app.solvers.best_response import counterfactual_best_response_probs
from app.solvers.cfr import CFRSolver
from app.solvers.values import CfvVector

logger = logging.getLogger(__name__)


def forest_root_values(
    forest: GameDefinition,
    probs: np.ndarray,
    root_infosets,
    root_position: Dict[int, int],
) -> Dict[int, Dict]:
    """Root counterfactual values of both players, keyed by augmented information set."""
    reach = reach_arrays(forest, probs)
    values = subtree_values(forest, probs)
    roots = forest.roots
    result = {}
    for player in PLAYERS:
        node_values = reach_without(reach, player)[roots] * values[roots] * sign(player)
        result[player] = {
            key: float(sum(node_values[root_position[node]] for node in nodes))
            for key, nodes in root_infosets[player].items()
        }
    return result


def solve_subgame_mutual_cbr(
    game: GameDefinition,
    partition: SubgamePartition,
    index: int,
    profile: Optional[ProbsLike],
    iterations: int,
    registry: Optional[AccumulatorRegistry] = None,
    root_reach: Optional[np.ndarray] = None,
    forest: Optional[GameDefinition] = None,
    keep_profile: bool = False,
) -> SubgameSolution:
    """
    Solve subgame `index` under the trunk reach induced by `profile` (or the
    given `root_reach`, one row per subgame root) and return both players'
    root counterfactual values.

    `eps_s` is the largest root counterfactual regret of the returned
    strategy, measured with a counterfactual best response of each player.
    """
    if iterations < 1:
        raise ValueError("Subgame solving needs at least 1 iteration")
    subgame = partition.subgame(index)
    if root_reach is None:
        reach = reach_arrays(game, profile)
        root_reach = reach[list(subgame.roots)]
    if forest is None:
        forest = subgame_forest(partition, index, root_reach)
    else:
        forest = dataclasses.replace(forest, root_reach=np.asarray(root_reach, dtype=np.float64))

    table = AccumulatorTable(forest, label=f"subgame-{index}")
    if registry is not None:
        registry.register(table, persistent=False)
    try:
        solver = CFRSolver(forest, table)
        for _ in range(iterations):
            solver.iterate()
        average = solver.average_profile().probs
    finally:
        if registry is not None:
            registry.release(table)

    root_position = {int(original): position for position, original in enumerate(subgame.roots)}
    values = forest_root_values(forest, average, subgame.root_infosets, root_position)

    eps_s = 0.0
    for player in PLAYERS:
        response = counterfactual_best_response_probs(forest, average, player)
        best = forest_root_values(forest, response, subgame.root_infosets, root_position)[player]
        for key, value in best.items():
            eps_s = max(eps_s, value - values[player][key])

    root_values = subtree_values(forest, average)[forest.roots]
    logger.debug(f"Subgame {index}: {iterations} iterations, eps_S={eps_s:.3g}")
    return SubgameSolution(
        index=index,
        cfvs={player: CfvVector(player=player, values=values[player]) for player in PLAYERS},
        root_values=root_values,
        eps_s=eps_s,
        entries=table.entries,
        profile=StrategyProfile(forest, average) if keep_profile else None,
    )
