# app/baselines/abstraction.py
"""
The Leduc card abstraction and the map that lifts abstract strategies back
to the full game.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from app.baselines.base import UnsupportedGameError
from app.games.factory import build_game
from app.games.profile import StrategyProfile
from app.games.tree import GameDefinition
from app.games.types import InfosetKey

logger = logging.getLogger(__name__)

SUPPORTED = ("leduc",)


@dataclass(frozen=True, eq=False)
class AbstractionMap:
    """Surjection from real information sets to abstract ones; actions map to themselves."""

    real: GameDefinition
    abstract: GameDefinition
    infoset_map: np.ndarray

    def abstract_key(self, key: InfosetKey) -> InfosetKey:
        return self.abstract.infosets[self.infoset_map[self.real.infoset_of(key).index]].key

    def preimage(self, key: InfosetKey) -> List[InfosetKey]:
        target = self.abstract.infoset_of(key).index
        return [info.key for info in self.real.infosets if self.infoset_map[info.index] == target]

    def buckets(self) -> Dict[InfosetKey, List[InfosetKey]]:
        result: Dict[InfosetKey, List[InfosetKey]] = {}
        for info in self.real.infosets:
            result.setdefault(self.abstract.infosets[self.infoset_map[info.index]].key, []).append(info.key)
        return result

    def slot_map(self) -> np.ndarray:
        real = self.real
        position = np.arange(real.num_slots) - real.infoset_offset[real.slot_infoset]
        return self.abstract.infoset_offset[self.infoset_map[real.slot_infoset]] + position

    def lift(self, profile: StrategyProfile) -> StrategyProfile:
        """Copy every abstract distribution to all of its real information sets."""
        if profile.game is not self.abstract:
            raise UnsupportedGameError("Profile does not belong to the abstract game")
        return StrategyProfile(self.real, profile.probs[self.slot_map()].copy())


def build_abstraction(game: GameDefinition) -> Tuple[GameDefinition, AbstractionMap]:
    """
    Abstract game and map for Leduc.

    Raises:
        UnsupportedGameError: For any game other than Leduc
    """
    if game.name not in SUPPORTED:
        raise UnsupportedGameError(f"No abstraction for game {game.name}")
    abstract = build_game(game.name, abstract=True)
    if abstract.num_nodes != game.num_nodes or not np.array_equal(abstract.actor, game.actor):
        raise UnsupportedGameError("Abstract game tree does not match the real game")

    infoset_map = abstract.infoset[game.infoset_rep]
    for info in game.infosets:
        target = abstract.infosets[infoset_map[info.index]]
        if target.actions != info.actions or np.any(abstract.infoset[list(info.members)] != target.index):
            raise UnsupportedGameError(f"Information set {info.key} does not map to a single abstract set")
    logger.info(
        f"Abstraction of {game.name}: {game.num_infosets} information sets -> {abstract.num_infosets}"
    )
    return abstract, AbstractionMap(real=game, abstract=abstract, infoset_map=infoset_map)
