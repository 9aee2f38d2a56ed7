# app/solvers/values.py
"""
Counterfactual values.

v_p(I, a) sums, over leaves below (I, a), the opponent and chance reach of
the leaf times p's probability of playing from (I, a) to the leaf times p's
utility. Values are defined even where p never reaches I.
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from app.games.evaluation import ProbsLike, _probs, reach_arrays, reach_without, sign, subtree_values
from app.games.tree import GameDefinition
from app.games.types import InfosetKey


@dataclass
class CfvVector:
    """
    Counterfactual values of one player.

    `values` holds v_p(I) under the evaluated profile; `action_values` holds
    v_p(I, a) where they were computed (root-value vectors carry only
    `values`, keyed by augmented information sets).
    """

    player: int
    values: Dict[InfosetKey, float] = field(default_factory=dict)
    action_values: Dict[InfosetKey, Dict[str, float]] = field(default_factory=dict)

    def __getitem__(self, key: InfosetKey) -> float:
        return self.values[key]

    def __contains__(self, key: InfosetKey) -> bool:
        return key in self.values

    def __len__(self) -> int:
        return len(self.values)

    def keys(self):
        return self.values.keys()


def action_value_arrays(
    game: GameDefinition,
    probs: np.ndarray,
    player: int,
    reach: np.ndarray,
    values: np.ndarray,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-slot v_p(I, a) and per-infoset v_p(I) from precomputed reach and
    player1 subtree values. Slots of the other player are zero.
    """
    edges = game.player_edges[player]
    parents = game.parent[edges]
    weights = reach_without(reach, player)[parents] * values[edges] * sign(player)
    action_values = np.bincount(game.edge_slot[edges], weights=weights, minlength=game.num_slots)
    infoset_values = np.bincount(game.slot_infoset, weights=probs * action_values, minlength=game.num_infosets)
    return action_values, infoset_values


def counterfactual_arrays(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    probs = _probs(profile)
    reach = reach_arrays(game, probs)
    values = subtree_values(game, probs, leaf_values)
    return action_value_arrays(game, probs, player, reach, values)


def node_counterfactual_values(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> np.ndarray:
    """pi_{-p}(h) times p's expected utility below h, for every node h."""
    probs = _probs(profile)
    reach = reach_arrays(game, probs)
    values = subtree_values(game, probs, leaf_values)
    return reach_without(reach, player) * values * sign(player)


def counterfactual_values(
    game: GameDefinition,
    profile: ProbsLike,
    player: int,
    leaf_values: Optional[np.ndarray] = None,
) -> CfvVector:
    action_values, infoset_values = counterfactual_arrays(game, profile, player, leaf_values)
    vector = CfvVector(player=player)
    for info in game.infosets_of(player):
        vector.values[info.key] = float(infoset_values[info.index])
        vector.action_values[info.key] = {
            action: float(action_values[slot]) for action, slot in zip(info.actions, info.slots)
        }
    return vector
