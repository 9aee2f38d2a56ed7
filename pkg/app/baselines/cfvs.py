# app/baselines/cfvs.py
from typing import Dict

from app.decomposition.partition import SubgamePartition
from app.decomposition.values import collect_root_values
from app.games.base import PLAYERS
from app.games.evaluation import ProbsLike, _probs
from app.games.tree import GameDefinition
from app.solvers.best_response import counterfactual_best_response_probs
from app.solvers.values import CfvVector, node_counterfactual_values


def cfvs_from_best_response(
    game: GameDefinition,
    profile: ProbsLike,
    partition: SubgamePartition,
    index: int,
) -> Dict[int, CfvVector]:
    """
    Root counterfactual values of each player when that player best
    responds to the other's part of `profile`. These are the values a safe
    re-solve of an existing strategy must not let the opponent exceed.
    """
    subgame = partition.subgame(index)
    result = {}
    for player in PLAYERS:
        response = counterfactual_best_response_probs(game, _probs(profile), player)
        node_values = node_counterfactual_values(game, response, player)
        result[player] = CfvVector(player=player, values=collect_root_values(node_values, subgame.root_infosets[player]))
    return result


def all_cfvs_from_best_response(profile: ProbsLike, partition: SubgamePartition) -> Dict[int, CfvVector]:
    game = partition.game
    merged = {}
    for player in PLAYERS:
        response = counterfactual_best_response_probs(game, _probs(profile), player)
        node_values = node_counterfactual_values(game, response, player)
        merged[player] = CfvVector(player=player)
        for subgame in partition.subgames:
            merged[player].values.update(collect_root_values(node_values, subgame.root_infosets[player]))
    return merged
