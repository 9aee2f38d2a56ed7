# app/decomposition/values.py
"""
Counterfactual values at subgame roots.

For a root augmented information set I of player p,
v_p(I) = sum over roots h in I of pi_{-p}(h) * u_p(h), where u_p(h) is p's
expected utility below h.
"""
from typing import Dict, Mapping, Tuple

import numpy as np

from app.decomposition.partition import SubgamePartition
from app.games.base import PLAYERS
from app.games.evaluation import ProbsLike
from app.games.tree import GameDefinition
from app.games.types import InfosetKey
from app.solvers.values import CfvVector, node_counterfactual_values


def collect_root_values(
    node_values: np.ndarray,
    root_infosets: Mapping[InfosetKey, Tuple[int, ...]],
) -> Dict[InfosetKey, float]:
    return {key: float(np.sum(node_values[list(nodes)])) for key, nodes in root_infosets.items()}


def cfvs_from_profile(
    game: GameDefinition,
    profile: ProbsLike,
    partition: SubgamePartition,
    index: int,
) -> Dict[int, CfvVector]:
    """Both players' root counterfactual values of `profile` on one subgame."""
    subgame = partition.subgame(index)
    result = {}
    for player in PLAYERS:
        node_values = node_counterfactual_values(game, profile, player)
        result[player] = CfvVector(
            player=player, values=collect_root_values(node_values, subgame.root_infosets[player])
        )
    return result


def all_cfvs_from_profile(profile: ProbsLike, partition: SubgamePartition) -> Dict[int, CfvVector]:
    """Root counterfactual values of every subgame, merged per player."""
    merged = {}
    for player in PLAYERS:
        node_values = node_counterfactual_values(partition.game, profile, player)
        merged[player] = CfvVector(player=player)
        for subgame in partition.subgames:
            merged[player].values.update(collect_root_values(node_values, subgame.root_infosets[player]))
    return merged
