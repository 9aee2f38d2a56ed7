# app/games/profile.py
"""
Strategy profiles over a built game.

A profile stores one probability per (information set, action) slot of its
game. Keys are InfosetKey values, so profiles and fragments move between a
game and the copies made of it (subgames, recovery games) by key.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional

import numpy as np

from app.games.base import PLAYERS, StrategyError
from app.games.tree import GameDefinition
from app.games.types import InfosetKey

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


def uniform_probabilities(game: GameDefinition) -> np.ndarray:
    return 1.0 / game.infoset_size[game.slot_infoset].astype(np.float64)


def normalize_slots(game: GameDefinition, weights: np.ndarray) -> np.ndarray:
    """Normalize per information set; all-zero sets become uniform."""
    totals = np.bincount(game.slot_infoset, weights=weights, minlength=game.num_infosets)
    per_slot = totals[game.slot_infoset]
    uniform = uniform_probabilities(game)
    safe = np.where(per_slot > 0, per_slot, 1.0)
    return np.where(per_slot > 0, weights / safe, uniform)


@dataclass
class StrategyFragment:
    """Distributions for one player at a subset of information sets."""

    player: int
    distributions: Dict[InfosetKey, Dict[str, float]] = field(default_factory=dict)

    def keys(self):
        return self.distributions.keys()

    def __len__(self) -> int:
        return len(self.distributions)


class StrategyProfile:
    """Behaviour strategies of both players on one game."""

    def __init__(self, game: GameDefinition, probs: np.ndarray):
        if probs.shape != (game.num_slots,):
            raise StrategyError(
                f"Profile has {probs.shape} entries but {game.name} has {game.num_slots} slots"
            )
        self.game = game
        self.probs = probs

    @classmethod
    def uniform(cls, game: GameDefinition) -> "StrategyProfile":
        return cls(game, uniform_probabilities(game))

    @classmethod
    def random(cls, game: GameDefinition, rng: np.random.Generator) -> "StrategyProfile":
        """Dirichlet(1) distribution at every information set."""
        return cls(game, normalize_slots(game, rng.exponential(size=game.num_slots)))

    @classmethod
    def from_weights(cls, game: GameDefinition, weights: np.ndarray) -> "StrategyProfile":
        return cls(game, normalize_slots(game, np.asarray(weights, dtype=np.float64)))

    @classmethod
    def from_mapping(
        cls,
        game: GameDefinition,
        mapping: Mapping[InfosetKey, Mapping[str, float]],
        strict: bool = False,
    ) -> "StrategyProfile":
        """
        Build a profile from per-key distributions.

        Information sets missing from `mapping` play uniformly unless `strict`
        is set; unknown keys are always an error.
        """
        probs = uniform_probabilities(game)
        seen = set()
        for key, distribution in mapping.items():
            info = game.infoset_of(key)
            probs[info.slot_offset : info.slot_offset + len(info.actions)] = _ordered(info, distribution)
            seen.add(info.index)
        if strict and len(seen) != game.num_infosets:
            missing = [str(info.key) for info in game.infosets if info.index not in seen]
            raise StrategyError(f"Profile is missing {len(missing)} information sets, e.g. {missing[0]}")
        return cls(game, probs)

    def copy(self) -> "StrategyProfile":
        return StrategyProfile(self.game, self.probs.copy())

    def distribution(self, key: InfosetKey) -> Dict[str, float]:
        info = self.game.infoset_of(key)
        return {action: float(self.probs[slot]) for action, slot in zip(info.actions, info.slots)}

    def player_mask(self, player: int) -> np.ndarray:
        return self.game.infoset_player[self.game.slot_infoset] == player

    def with_player(self, player: int, other: "StrategyProfile") -> "StrategyProfile":
        """This profile with `player`'s behaviour taken from `other`."""
        if other.game is not self.game:
            raise StrategyError("Cannot combine profiles of different games")
        mask = self.player_mask(player)
        return StrategyProfile(self.game, np.where(mask, other.probs, self.probs))

    def replace(self, distributions: Mapping[InfosetKey, Mapping[str, float]]) -> "StrategyProfile":
        probs = self.probs.copy()
        for key, distribution in distributions.items():
            info = self.game.infoset_of(key)
            probs[info.slot_offset : info.slot_offset + len(info.actions)] = _ordered(info, distribution)
        return StrategyProfile(self.game, probs)

    def fragment(self, player: int, keys: Optional[Iterable[InfosetKey]] = None) -> StrategyFragment:
        selected = keys if keys is not None else [info.key for info in self.game.infosets_of(player)]
        fragment = StrategyFragment(player=player)
        for key in selected:
            if self.game.infoset_of(key).player != player:
                raise StrategyError(f"Information set {key} does not belong to player {player + 1}")
            fragment.distributions[key] = self.distribution(key)
        return fragment

    def to_mapping(self, player: Optional[int] = None) -> Dict[InfosetKey, Dict[str, float]]:
        players = PLAYERS if player is None else (player,)
        return {
            info.key: self.distribution(info.key)
            for info in self.game.infosets
            if info.player in players
        }

    def validate(self, tolerance: float = DEFAULT_TOLERANCE) -> None:
        if np.any(self.probs < -tolerance):
            raise StrategyError("Profile has negative probabilities")
        totals = np.bincount(self.game.slot_infoset, weights=self.probs, minlength=self.game.num_infosets)
        bad = np.nonzero(np.abs(totals - 1.0) > tolerance)[0]
        if len(bad):
            info = self.game.infosets[bad[0]]
            raise StrategyError(f"Distribution at {info.key} sums to {totals[bad[0]]:.17g}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrategyProfile):
            return NotImplemented
        return other.game is self.game and np.array_equal(other.probs, self.probs)

    def __repr__(self) -> str:
        return f"StrategyProfile({self.game.name}, {self.game.num_infosets} information sets)"


def _ordered(info, distribution: Mapping[str, float]) -> np.ndarray:
    unknown = set(distribution) - set(info.actions)
    if unknown:
        raise StrategyError(f"Unknown actions {sorted(unknown)} at {info.key}")
    return np.array([float(distribution.get(action, 0.0)) for action in info.actions])
