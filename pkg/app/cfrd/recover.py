# app/cfrd/recover.py
"""
Full-strategy recovery: re-solve every subgame for both players with the
recovery gadget and stitch the results into the trunk profile.
"""
import logging
from functools import partial
from typing import Dict, List, Optional, Tuple

from app.decomposition.base import UnreachableSubgameError
from app.decomposition.partition import SubgamePartition
from app.decomposition.recovery import build_recovery_game, resolve_subgame
from app.decomposition.stitch import stitch
from app.games.base import PLAYERS, opponent
from app.games.profile import StrategyFragment, StrategyProfile
from app.solvers.values import CfvVector
from app.worker.pool import run_tasks

logger = logging.getLogger(__name__)


def uniform_fragment(profile: StrategyProfile, partition: SubgamePartition, index: int, player: int) -> StrategyFragment:
    fragment = StrategyFragment(player=player)
    for key in sorted(partition.subgame(index).infoset_keys[player]):
        actions = profile.game.infoset_of(key).actions
        fragment.distributions[key] = {action: 1.0 / len(actions) for action in actions}
    return fragment


def recover_subgame(
    job: Tuple[int, int],
    profile: StrategyProfile,
    partition: SubgamePartition,
    cfvs: Dict[int, CfvVector],
    iterations: int,
) -> Tuple[int, int, Optional[StrategyFragment]]:
    """Recover one player's strategy in one subgame; None when k = 0."""
    index, player = job
    try:
        recovery = build_recovery_game(profile.game, partition, index, profile, player, cfvs[opponent(player)])
    except UnreachableSubgameError:
        return index, player, None
    return index, player, resolve_subgame(recovery, iterations)


def recover_full(
    game,
    partition: SubgamePartition,
    profile: StrategyProfile,
    cfvs: Dict[int, CfvVector],
    recovery_iterations: int,
    workers: int = 1,
) -> StrategyProfile:
    """
    Complete `profile` by safely re-solving every subgame for both players.

    Subgames the opponent and chance cannot reach (k = 0) play uniformly and
    are reported with a warning.
    """
    if recovery_iterations < 1:
        raise ValueError("Recovery needs at least 1 iteration")
    if profile.game is not game:
        raise ValueError("Profile does not belong to the game being recovered")
    jobs: List[Tuple[int, int]] = [
        (index, player) for index in range(len(partition.subgames)) for player in PLAYERS
    ]
    recover = partial(recover_subgame, profile=profile, partition=partition, cfvs=cfvs, iterations=recovery_iterations)
    results = run_tasks(recover, jobs, workers=workers)

    stitched = profile
    for index, player, fragment in results:
        if fragment is None:
            logger.warning(
                f"Subgame {index} is unreachable for player {player + 1}'s recovery; playing uniformly there"
            )
            fragment = uniform_fragment(profile, partition, index, player)
        stitched = stitch(stitched, partition, index, fragment)
    logger.info(f"Recovered {len(partition.subgames)} subgames with {recovery_iterations} iterations each")
    return stitched
