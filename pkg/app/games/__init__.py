from app.games.base import (
    CHANCE,
    LEAF,
    PLAYER1,
    PLAYER2,
    PLAYERS,
    GameError,
    GameValidationError,
    StrategyError,
    UnknownGameError,
    opponent,
)
from app.games.factory import GameFactory, build_game
from app.games.profile import StrategyFragment, StrategyProfile
from app.games.tree import GameDefinition, GameTreeBuilder, build_tree
from app.games.types import InfosetKey, ReachProbabilities

__all__ = [
    "CHANCE",
    "LEAF",
    "PLAYER1",
    "PLAYER2",
    "PLAYERS",
    "GameDefinition",
    "GameError",
    "GameFactory",
    "GameTreeBuilder",
    "GameValidationError",
    "InfosetKey",
    "ReachProbabilities",
    "StrategyError",
    "StrategyFragment",
    "StrategyProfile",
    "UnknownGameError",
    "build_game",
    "build_tree",
    "opponent",
]
