# app/baselines/base.py
"""
Exceptions raised by the comparison baselines.
"""
from app.games.base import GameError


class BaselineError(GameError):
    """Base exception for baseline errors."""

    pass


class UnsupportedGameError(BaselineError):
    """Exception raised when a baseline is asked to work on a game it does not support."""

    pass


class ZeroReachError(BaselineError):
    """Exception raised when a subgame has zero joint trunk reach."""

    pass
