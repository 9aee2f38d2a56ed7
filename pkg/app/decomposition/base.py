# app/decomposition/base.py
"""
Exceptions raised while splitting games into trunk and subgames and while
building, solving and stitching recovery games.
"""
from app.games.base import GameError


class DecompositionError(GameError):
    """Base exception for decomposition errors."""

    pass


class PartitionError(DecompositionError):
    """Exception raised when a frontier does not yield a valid trunk/subgame split."""

    pass


class UnreachableSubgameError(DecompositionError):
    """Exception raised when no opponent/chance path reaches a subgame (k = 0)."""

    def __init__(self, message: str, subgame: int = -1, player: int = -1):
        super().__init__(message)
        self.subgame = subgame
        self.player = player


class FragmentMismatchError(DecompositionError):
    """Exception raised when a strategy fragment does not cover exactly one subgame."""

    pass
