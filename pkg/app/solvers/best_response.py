# app/solvers/best_response.py
"""
Counterfactual best response and exploitability.

The best response is built bottom-up over the responder's information sets:
sets are processed by decreasing number of the responder's earlier
decisions, so every set below the current group already plays its best
action when the group's counterfactual action values are computed.
Opponent and chance reach do not depend on the responder, so one reach pass
serves every group.
"""
import logging
from typing import Optional, Tuple

import numpy as np

from app.games.base import PLAYER1, PLAYER2, PLAYERS
from app.games.evaluation import ProbsLike, _probs, expected_value, reach_arrays, subtree_values
from app.games.profile import StrategyFragment, StrategyProfile
from app.games.tree import GameDefinition
from app.solvers.values import action_value_arrays

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12


def own_decision_counts(game: GameDefinition, player: int) -> np.ndarray:
    """Number of the player's decisions above each node."""
    counts = np.zeros(game.num_nodes, dtype=np.int64)
    for start, stop in game.levels[1:]:
        parents = game.parent[start:stop]
        counts[start:stop] = counts[parents] + (game.actor[parents] == player)
    return counts


def best_actions(game: GameDefinition, action_values: np.ndarray) -> np.ndarray:
    """Index of the best action at every information set, lowest index on ties."""
    offsets = game.infoset_offset
    best = np.maximum.reduceat(action_values, offsets)
    candidate = action_values >= best[game.slot_infoset] - TIE_TOLERANCE
    position = np.arange(game.num_slots) - offsets[game.slot_infoset]
    return np.minimum.reduceat(np.where(candidate, position, game.num_slots), offsets)


def counterfactual_best_response_probs(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> np.ndarray:
    """`profile`'s slot probabilities with the player's slots set to a CBR."""
    probs = _probs(profile).copy()
    if game.num_infosets == 0:
        return probs
    reach = reach_arrays(game, probs)
    depth = own_decision_counts(game, player)[game.infoset_rep]
    mine = game.infoset_player == player
    for level in sorted(set(depth[mine].tolist()), reverse=True):
        group = np.nonzero(mine & (depth == level))[0]
        values = subtree_values(game, probs, leaf_values)
        action_values, _ = action_value_arrays(game, probs, player, reach, values)
        choice = best_actions(game, action_values)
        slots = np.isin(game.slot_infoset, group)
        probs[slots] = 0.0
        probs[game.infoset_offset[group] + choice[group]] = 1.0
    return probs


def counterfactual_best_response(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> StrategyFragment:
    """Pure counterfactual best response of `player` at every one of its information sets."""
    probs = counterfactual_best_response_probs(game, profile, player, leaf_values)
    return StrategyProfile(game, probs).fragment(player)


def best_response_value(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> float:
    """Utility of `player` playing a best response against the profile."""
    probs = counterfactual_best_response_probs(game, profile, player, leaf_values)
    return expected_value(game, probs, leaf_values)[player]


def best_response_values(game: GameDefinition, profile: ProbsLike) -> Tuple[float, float]:
    return best_response_value(game, profile, PLAYER1), best_response_value(game, profile, PLAYER2)


def exploitability(game: GameDefinition, profile: ProbsLike) -> float:
    """
    Average gain of a best responder against each half of the profile, in
    chips per hand. Zero exactly at a Nash equilibrium of a zero-sum game.
    """
    first, second = best_response_values(game, profile)
    return (first + second) / 2.0


def best_response_gains(game: GameDefinition, profile: ProbsLike) -> Tuple[float, float]:
    """How much each player gains by switching to a best response."""
    value = expected_value(game, profile)
    return tuple(best_response_value(game, profile, p) - value[p] for p in PLAYERS)


def is_best_response(game: GameDefinition, profile: ProbsLike, player: int, tolerance: float = 1e-9) -> bool:
    return best_response_gains(game, profile)[player] <= tolerance
