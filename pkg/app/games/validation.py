# app/games/validation.py
"""
Structural checks for built games: zero-sum leaves, chance distributions,
consistent action lists and perfect recall.
"""
import logging
from typing import List, Tuple

import numpy as np

from app.games.base import CHANCE, PLAYERS
from app.games.tree import GameDefinition
from app.games.types import Diagnostics, Violation

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


def validate(game: GameDefinition, tolerance: float = TOLERANCE) -> Diagnostics:
    diagnostics = Diagnostics(game=game.name)
    violations = diagnostics.violations

    for leaf in game.leaves:
        total = game.utility[leaf, 0] + game.utility[leaf, 1]
        if abs(total) > tolerance:
            violations.append(
                Violation(
                    kind="zero-sum",
                    message=f"Utilities at leaf {game.histories[leaf]!r} sum to {total:g}",
                    histories=(game.histories[leaf],),
                )
            )

    chance_nodes = np.nonzero(game.actor == CHANCE)[0]
    for node in chance_nodes:
        probs = game.chance_prob[list(game.children(node))]
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > tolerance:
            violations.append(
                Violation(
                    kind="chance",
                    message=f"Chance distribution at {game.histories[node]!r} sums to {probs.sum():g}",
                    histories=(game.histories[node],),
                )
            )

    for info in game.infosets:
        for member in info.members:
            if game.node_actions[member] != info.actions:
                violations.append(
                    Violation(
                        kind="actions",
                        message=f"Actions at {game.histories[member]!r} differ from information set {info.key}",
                        histories=(game.histories[info.members[0]], game.histories[member]),
                    )
                )
                break

    violations.extend(_perfect_recall(game))

    if not diagnostics.ok:
        logger.debug(diagnostics.summary())
    return diagnostics


def _own_sequences(game: GameDefinition) -> List[Tuple[tuple, tuple]]:
    """Each player's (information set, action) sequence from the root."""
    sequences: List[Tuple[tuple, tuple]] = []
    for node in range(game.num_nodes):
        parent = game.parent[node]
        if parent < 0:
            sequences.append(((), ()))
            continue
        inherited = sequences[parent]
        actor = game.actor[parent]
        if actor in PLAYERS:
            extended = list(inherited)
            extended[actor] = inherited[actor] + ((int(game.infoset[parent]), int(game.action_index[node])),)
            sequences.append((extended[0], extended[1]))
        else:
            sequences.append(inherited)
    return sequences


def _perfect_recall(game: GameDefinition) -> List[Violation]:
    sequences = _own_sequences(game)
    for info in game.infosets:
        first = info.members[0]
        expected = sequences[first][info.player]
        for member in info.members[1:]:
            if sequences[member][info.player] != expected:
                return [
                    Violation(
                        kind="perfect-recall",
                        message=(
                            f"Player {info.player + 1} forgets earlier play at {info.key}: "
                            f"{game.histories[first]!r} vs {game.histories[member]!r}"
                        ),
                        histories=(game.histories[first], game.histories[member]),
                    )
                ]
    return []
