# app/baselines/unsafe.py
"""
Unsafe re-solving: treat the trunk as fixed, fold both players' trunk
actions into chance, and solve the subgame on its own. Nothing stops the
re-solved strategy from being more exploitable than the one it replaces.
"""
import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np

from app.baselines.base import ZeroReachError
from app.decomposition.partition import SubgamePartition, copy_subtree
from app.decomposition.stitch import stitch
from app.games.base import CHANCE, PLAYERS
from app.games.evaluation import ProbsLike, reach_arrays
from app.games.profile import StrategyFragment, StrategyProfile
from app.games.tree import GameDefinition, GameTreeBuilder
from app.solvers.cfr import cfr_solve

logger = logging.getLogger(__name__)


@dataclass
class UnsafeResolution:
    game: GameDefinition
    fragments: Dict[int, StrategyFragment]


def build_unsafe_game(
    game: GameDefinition,
    partition: SubgamePartition,
    index: int,
    profile: ProbsLike,
) -> GameDefinition:
    """Subgame `index` below a chance root weighted by the full joint trunk reach."""
    subgame = partition.subgame(index)
    reach = reach_arrays(game, profile)
    roots = np.array(subgame.roots, dtype=np.int64)
    joint = np.prod(reach[roots], axis=1)
    total = float(joint.sum())
    if total <= 0.0:
        raise ZeroReachError(f"Subgame {index} of {game.name} has zero joint trunk reach")
    builder = GameTreeBuilder(f"{game.name}/unsafe-{index}")
    top = builder.add_root(CHANCE, history="~fixed-trunk")
    for weight, root in zip(joint, roots):
        copy_subtree(builder, game, int(root), top, game.histories[root], chance_prob=weight / total)
    return builder.build()


def unsafe_resolve(
    game: GameDefinition,
    partition: SubgamePartition,
    index: int,
    profile: ProbsLike,
    iterations: int,
) -> UnsafeResolution:
    """
    Re-solve subgame `index` with the trunk fixed and return both players'
    fragments for it.

    Raises:
        ZeroReachError: If no history of the subgame is reachable under the trunk
    """
    if iterations < 1:
        raise ValueError("Unsafe re-solving needs at least 1 iteration")
    unsafe_game = build_unsafe_game(game, partition, index, profile)
    result = cfr_solve(unsafe_game, iterations)
    keys = partition.subgame(index).infoset_keys
    fragments = {player: result.profile.fragment(player, sorted(keys[player])) for player in PLAYERS}
    return UnsafeResolution(game=unsafe_game, fragments=fragments)


def unsafe_resolve_all(
    game: GameDefinition,
    partition: SubgamePartition,
    profile: StrategyProfile,
    iterations: int,
) -> StrategyProfile:
    """Unsafe re-solve of every reachable subgame, stitched into `profile`."""
    stitched = profile
    for index in range(len(partition.subgames)):
        try:
            resolution = unsafe_resolve(game, partition, index, profile, iterations)
        except ZeroReachError as e:
            logger.warning(f"{e}; keeping the original strategy there")
            continue
        for fragment in resolution.fragments.values():
            stitched = stitch(stitched, partition, index, fragment)
    return stitched
