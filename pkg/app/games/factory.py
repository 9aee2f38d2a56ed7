# app/games/factory.py
"""
Factory for the built-in games.
"""
import logging
from functools import lru_cache
from typing import Callable, Dict, List

from app.games.base import GameRules, GameValidationError, UnknownGameError
from app.games.rules import KuhnRules, LeducRules, RockPaperScissorsRules
from app.games.tree import GameDefinition, build_tree
from app.games.validation import validate

logger = logging.getLogger(__name__)


class GameFactory:
    """
    Factory for creating rules objects by game name.
    """

    _registry: Dict[str, Callable[[], GameRules]] = {
        "rps": RockPaperScissorsRules,
        "kuhn": KuhnRules,
        "leduc": LeducRules,
        "leduc-abstract": lambda: LeducRules(abstract=True),
    }

    @classmethod
    def names(cls) -> List[str]:
        return sorted(cls._registry)

    @classmethod
    def create(cls, name: str, abstract: bool = False) -> GameRules:
        """
        Create the rules of a built-in game.

        Args:
            name: Game identifier
            abstract: Use the abstracted observations (Leduc only)

        Raises:
            UnknownGameError: If the game name is not registered
        """
        if abstract and name == "leduc":
            name = "leduc-abstract"
        try:
            factory = cls._registry[name]
        except KeyError:
            raise UnknownGameError(f"Unknown game: {name} (known: {', '.join(cls.names())})")
        if abstract and name != "leduc-abstract":
            raise UnknownGameError(f"Game {name} has no abstraction")
        return factory()


def build_game(name: str, abstract: bool = False) -> GameDefinition:
    """Build and validate a built-in game. Results are cached per process."""
    return _build_cached(GameFactory.create(name, abstract).name)


@lru_cache(maxsize=None)
def _build_cached(name: str) -> GameDefinition:
    rules = GameFactory.create(name)
    game = build_tree(rules)
    diagnostics = validate(game)
    if not diagnostics.ok:
        raise GameValidationError(diagnostics.summary(), diagnostics)
    logger.info(
        f"Built game {game.name}: {game.num_nodes} nodes, {game.num_infosets} information sets"
    )
    return game
