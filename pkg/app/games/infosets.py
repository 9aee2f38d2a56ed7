# app/games/infosets.py
from typing import Dict, List, Union

from app.games.base import LEAF, GameError
from app.games.tree import GameDefinition
from app.games.types import InfosetKey


def augmented_infoset(game: GameDefinition, history: Union[str, int], player: int) -> InfosetKey:
    """
    Key of the augmented information set of `player` containing `history`.

    On the player's own turn this is the standard information set's key;
    elsewhere it is built from the player's observation sequence.
    """
    node = game.node(history) if isinstance(history, str) else int(history)
    if game.actor[node] == player:
        return game.infosets[game.infoset[node]].key
    if game.augmented is None:
        raise GameError(f"Game {game.name} carries no augmented information sets")
    if game.actor[node] == LEAF:
        raise GameError(f"History {game.histories[node]!r} is a leaf")
    return game.augmented[node][player]


def group_by_augmented(game: GameDefinition, nodes, player: int) -> Dict[InfosetKey, List[int]]:
    """Partition `nodes` by the player's augmented information set."""
    groups: Dict[InfosetKey, List[int]] = {}
    for node in nodes:
        groups.setdefault(augmented_infoset(game, int(node), player), []).append(int(node))
    return groups
