# app/games/base.py
"""
Base game functionality: player constants, the rules interface and the
exceptions shared by every package that works on game trees.
"""
import logging
from abc import ABC, abstractmethod
from typing import Any, Hashable, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

PLAYER1 = 0
PLAYER2 = 1
CHANCE = 2
LEAF = -1

PLAYERS = (PLAYER1, PLAYER2)

ACTOR_NAMES = {PLAYER1: "p1", PLAYER2: "p2", CHANCE: "chance", LEAF: "leaf"}


def opponent(player: int) -> int:
    """Return the other non-chance player."""
    return PLAYER2 if player == PLAYER1 else PLAYER1


def player_number(player: int) -> int:
    """Player index as printed in files (1 or 2)."""
    return player + 1


def player_from_number(number: int) -> int:
    if number not in (1, 2):
        raise StrategyError(f"Unknown player number: {number}")
    return number - 1


class GameError(Exception):
    """Base exception for game errors."""

    pass


class UnknownGameError(GameError):
    """Exception raised when a game name is not registered."""

    pass


class GameValidationError(GameError):
    """Exception raised when a game violates a structural assumption."""

    def __init__(self, message: str, diagnostics: Any = None):
        super().__init__(message)
        self.diagnostics = diagnostics


class StrategyError(GameError):
    """Exception raised for invalid or mismatched strategies."""

    pass


class GameRules(ABC):
    """
    Rules of an extensive-form game, expanded into a tree by
    app.games.tree.build_tree.

    States are opaque hashable values. The label of a state for a player is
    what that player observes there: on the player's own turn it names the
    information set, elsewhere it is the observation used for augmented
    information sets.
    """

    name: str = "game"

    @abstractmethod
    def initial_state(self) -> Hashable:
        pass

    @abstractmethod
    def actor(self, state) -> int:
        """PLAYER1, PLAYER2, CHANCE or LEAF."""
        pass

    @abstractmethod
    def actions(self, state) -> Sequence[str]:
        pass

    @abstractmethod
    def next_state(self, state, action: str) -> Hashable:
        pass

    def chance_probs(self, state) -> Sequence[float]:
        actions = self.actions(state)
        return [1.0 / len(actions)] * len(actions)

    @abstractmethod
    def utility(self, state) -> Tuple[float, float]:
        """Payoffs (player1, player2) in chips at a leaf."""
        pass

    @abstractmethod
    def label(self, state, player: int) -> Optional[str]:
        """What `player` observes at `state`; None falls back to a generic marker."""
        pass
