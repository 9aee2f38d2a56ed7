# app/decomposition/frontiers.py
"""
Named frontiers for the built-in games.
"""
import logging
from typing import Callable, Dict

from app.decomposition.base import PartitionError
from app.games.base import CHANCE, PLAYER1, PLAYER2, PLAYERS
from app.games.tree import GameDefinition

logger = logging.getLogger(__name__)

FrontierPredicate = Callable[[GameDefinition, int], bool]


def no_frontier(game: GameDefinition, node: int) -> bool:
    return False


def first_move(game: GameDefinition, node: int) -> bool:
    """Player2's decision right after player1's first move."""
    parent = game.parent[node]
    return game.actor[node] == PLAYER2 and parent >= 0 and game.actor[parent] == PLAYER1 and game.parent[parent] < 0


def first_action(game: GameDefinition, node: int) -> bool:
    """The first betting response: a decision following a decision that follows the deal."""
    parent = game.parent[node]
    if parent < 0 or game.actor[node] not in PLAYERS or game.actor[parent] not in PLAYERS:
        return False
    grandparent = game.parent[parent]
    return grandparent >= 0 and game.actor[grandparent] == CHANCE


def betting_round(game: GameDefinition, node: int) -> bool:
    """Chance nodes reached by the end of a betting round (the public card deal)."""
    parent = game.parent[node]
    return game.actor[node] == CHANCE and parent >= 0 and game.actor[parent] in PLAYERS


def depth_frontier(depth: int) -> FrontierPredicate:
    def predicate(game: GameDefinition, node: int) -> bool:
        return game.depth[node] == depth

    return predicate


class FrontierFactory:
    """
    Factory for frontier predicates by name.

    Names are `none`, `default`, `depth:<k>` or one of the game's named
    frontiers (`first-move` for rps, `first-action` for kuhn, `round` for
    leduc and leduc-abstract).
    """

    _named: Dict[str, Dict[str, FrontierPredicate]] = {
        "rps": {"first-move": first_move},
        "kuhn": {"first-action": first_action},
        "leduc": {"round": betting_round},
        "leduc-abstract": {"round": betting_round},
    }
    _default: Dict[str, str] = {
        "rps": "first-move",
        "kuhn": "first-action",
        "leduc": "round",
        "leduc-abstract": "round",
    }

    @classmethod
    def names(cls, game: str):
        return ["none", "default", "depth:<k>"] + sorted(cls._named.get(game, {}))

    @classmethod
    def create(cls, game: str, name: str) -> FrontierPredicate:
        """
        Create a frontier predicate.

        Raises:
            PartitionError: If the name is unknown for the game
        """
        if name == "none":
            return no_frontier
        if name == "default":
            if game not in cls._default:
                raise PartitionError(f"Game {game} has no default frontier")
            name = cls._default[game]
        if name.startswith("depth:"):
            try:
                return depth_frontier(int(name.split(":", 1)[1]))
            except ValueError:
                raise PartitionError(f"Malformed depth frontier: {name}")
        try:
            return cls._named[game][name]
        except KeyError:
            raise PartitionError(f"Unknown frontier {name!r} for game {game} (known: {', '.join(cls.names(game))})")
