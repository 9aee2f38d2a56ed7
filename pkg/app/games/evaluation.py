# app/games/evaluation.py
"""
Level-by-level tree passes: reach probabilities, subtree values and
expected utilities. Values are from player1's perspective unless a player is
named; the built-in games are zero-sum, so player2's value is the negation.
"""
from typing import Optional, Tuple, Union

import numpy as np

from app.games.base import CHANCE, PLAYER1, PLAYERS
from app.games.profile import StrategyProfile
from app.games.tree import GameDefinition
from app.games.types import ReachProbabilities

ProbsLike = Union[StrategyProfile, np.ndarray]


def _probs(profile: ProbsLike) -> np.ndarray:
    return profile.probs if isinstance(profile, StrategyProfile) else profile


def sign(player: int) -> float:
    return 1.0 if player == PLAYER1 else -1.0


def edge_probabilities(game: GameDefinition, profile: ProbsLike) -> np.ndarray:
    """Probability of the edge entering each node (1 at roots)."""
    edge = game.chance_prob.copy()
    decision = game.edge_slot >= 0
    edge[decision] = _probs(profile)[game.edge_slot[decision]]
    return edge


def reach_arrays(game: GameDefinition, profile: ProbsLike, root_reach: Optional[np.ndarray] = None) -> np.ndarray:
    """(N, 3) reach contributions of player1, player2 and chance."""
    edge = edge_probabilities(game, profile)
    reach = np.ones((game.num_nodes, 3))
    start, stop = game.levels[0]
    reach[start:stop] = game.root_reach if root_reach is None else root_reach
    for start, stop in game.levels[1:]:
        parents = game.parent[start:stop]
        block = reach[parents]
        block[np.arange(stop - start), game.actor[parents]] *= edge[start:stop]
        reach[start:stop] = block
    return reach


def reach_without(reach: np.ndarray, player: int) -> np.ndarray:
    """pi_{-player} for every node."""
    other = PLAYERS[1 - player]
    return reach[:, other] * reach[:, CHANCE]


def reach(game: GameDefinition, profile: ProbsLike, history: Union[str, int]) -> ReachProbabilities:
    node = game.node(history) if isinstance(history, str) else int(history)
    row = reach_arrays(game, profile)[node]
    return ReachProbabilities(float(row[0]), float(row[1]), float(row[2]))


def subtree_values(
    game: GameDefinition,
    profile: ProbsLike,
    leaf_values: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    Expected player1 utility below every node under `profile`.

    `leaf_values` overrides the stored leaf utilities (used for trunk games
    whose pseudo-leaves are valued by subgame solves).
    """
    edge = edge_probabilities(game, profile)
    values = np.array(game.utility[:, 0] if leaf_values is None else leaf_values, dtype=np.float64)
    internal = game.child_count > 0
    values[internal] = 0.0
    levels = game.levels
    for index in range(len(levels) - 1, 0, -1):
        start, stop = levels[index]
        above_start, above_stop = levels[index - 1]
        parents = game.parent[start:stop] - above_start
        values[above_start:above_stop] += np.bincount(
            parents, weights=edge[start:stop] * values[start:stop], minlength=above_stop - above_start
        )
    return values


def expected_value(game: GameDefinition, profile: ProbsLike, leaf_values: Optional[np.ndarray] = None) -> Tuple[float, float]:
    """Exact (player1, player2) expected utility summed over every root."""
    values = subtree_values(game, profile, leaf_values)
    roots = game.roots
    value = float(np.sum(np.prod(game.root_reach, axis=1) * values[roots]))
    return value, -value


def head_to_head(game: GameDefinition, player1: StrategyProfile, player2: StrategyProfile) -> Tuple[float, float]:
    """Expected value with player1 following one profile and player2 another."""
    return expected_value(game, player1.with_player(PLAYERS[1], player2))


def leaf_probability_total(game: GameDefinition, profile: ProbsLike) -> float:
    reach = reach_arrays(game, profile)
    return float(np.sum(np.prod(reach[game.leaves], axis=1)))
