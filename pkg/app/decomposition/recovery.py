# app/decomposition/recovery.py
"""
Recovery (gadget) games for safe subgame re-solving.

The gadget wraps one subgame for the recovered player p. A chance root picks
a copy of each subgame root r with probability pi_{-o}(r) / k, where o is the
opponent and k normalizes. At every copy o chooses between T, which ends the
game with o's stored counterfactual value (rescaled), and F, which plays the
copied subgame with utilities multiplied by k. Solving the gadget gives p a
subgame strategy that cannot raise o's root counterfactual values.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional

import numpy as np

from app.decomposition.base import DecompositionError, UnreachableSubgameError
from app.decomposition.partition import SubgamePartition, copy_subtree
from app.games.base import CHANCE, LEAF, PLAYER1, opponent
from app.games.evaluation import ProbsLike, reach_arrays
from app.games.profile import StrategyFragment
from app.games.tree import GameDefinition, GameTreeBuilder
from app.games.types import InfosetKey
from app.solvers.cfr import SolveResult, cfr_solve
from app.solvers.values import CfvVector, counterfactual_values

logger = logging.getLogger(__name__)

CHOOSER_SUFFIX = "~tf"
FOLLOW = "F"
TERMINATE = "T"


@dataclass(frozen=True, eq=False)
class RecoveryGame:
    game: GameDefinition
    partition: SubgamePartition
    subgame: int
    player: int
    chooser: int
    k: float
    root_weights: np.ndarray
    terminate_utilities: Dict[InfosetKey, float]
    cfvs: Dict[InfosetKey, float]
    chooser_keys: Dict[InfosetKey, InfosetKey]

    @property
    def root_chance(self) -> np.ndarray:
        return self.root_weights / self.k

    def original_node(self, node: int) -> int:
        """Original-game history of a gadget node (-1 for gadget-only nodes)."""
        return int(self.game.source[node])


def _root_values(cfvs) -> Dict[InfosetKey, float]:
    if isinstance(cfvs, CfvVector):
        return dict(cfvs.values)
    return dict(cfvs)


def build_recovery_game(
    game: GameDefinition,
    partition: SubgamePartition,
    index: int,
    profile: ProbsLike,
    recover_for: int,
    cfvs,
) -> RecoveryGame:
    """
    Build the gadget for subgame `index`, recovering `recover_for`.

    `cfvs` maps the opponent's root augmented information sets to their
    stored counterfactual values (a CfvVector or a plain mapping). Only the
    trunk part of `profile` matters.

    Raises:
        UnreachableSubgameError: If k = 0
        DecompositionError: If a root information set has no stored value
    """
    chooser = opponent(recover_for)
    subgame = partition.subgame(index)
    values = _root_values(cfvs)
    missing = [key for key in subgame.root_infosets[chooser] if key not in values]
    if missing:
        raise DecompositionError(
            f"No counterfactual value for {len(missing)} root information sets of player "
            f"{chooser + 1}, e.g. {missing[0]}"
        )

    reach = reach_arrays(game, profile)
    roots = np.array(subgame.roots, dtype=np.int64)
    weights = reach[roots, recover_for] * reach[roots, CHANCE]
    k = float(weights.sum())
    if k <= 0.0:
        raise UnreachableSubgameError(
            f"Subgame {index} of {game.name} is unreachable for player {chooser + 1}'s opponent and chance",
            subgame=index,
            player=recover_for,
        )

    position = {int(root): i for i, root in enumerate(roots)}
    terminate: Dict[InfosetKey, float] = {}
    for key, nodes in subgame.root_infosets[chooser].items():
        denominator = float(sum(weights[position[node]] for node in nodes))
        terminate[key] = k * values[key] / denominator if denominator > 0 else 0.0

    builder = GameTreeBuilder(f"{game.name}/recovery-{index}-p{recover_for + 1}")
    top = builder.add_root(CHANCE, history="~gadget")
    chooser_keys: Dict[InfosetKey, InfosetKey] = {}
    for i, root in enumerate(roots):
        history = game.histories[root]
        root_key = game.augmented[root][chooser]
        chooser_key = root_key.with_suffix(CHOOSER_SUFFIX)
        chooser_keys[root_key] = chooser_key
        node = builder.add_child(
            top,
            history,
            chooser,
            chance_prob=weights[i] / k,
            key=chooser_key,
            history=f"{history}{CHOOSER_SUFFIX}",
        )
        copy_subtree(builder, game, int(root), node, FOLLOW, utility_scale=k)
        payoff = terminate[root_key]
        builder.add_child(
            node,
            TERMINATE,
            LEAF,
            utility=(payoff, -payoff) if chooser == PLAYER1 else (-payoff, payoff),
            history=f"{history}~{TERMINATE}",
        )

    recovery = RecoveryGame(
        game=builder.build(),
        partition=partition,
        subgame=index,
        player=recover_for,
        chooser=chooser,
        k=k,
        root_weights=weights,
        terminate_utilities=terminate,
        cfvs={key: values[key] for key in subgame.root_infosets[chooser]},
        chooser_keys=chooser_keys,
    )
    logger.debug(
        f"Recovery game for subgame {index}, player {recover_for + 1}: k={k:.6g}, "
        f"{recovery.game.num_nodes} nodes"
    )
    return recovery


def solve_recovery_game(recovery: RecoveryGame, iterations: int, eval_every: Optional[int] = 0) -> SolveResult:
    return cfr_solve(recovery.game, iterations, eval_every=eval_every)


def resolve_subgame(recovery: RecoveryGame, iterations: int) -> StrategyFragment:
    """
    Solve the gadget with CFR and return the recovered player's average
    strategy on the copied subgame, keyed by the original information sets.
    """
    if iterations < 1:
        raise ValueError("Recovery needs at least 1 iteration")
    result = solve_recovery_game(recovery, iterations)
    keys = recovery.partition.subgame(recovery.subgame).infoset_keys[recovery.player]
    return result.profile.fragment(recovery.player, sorted(keys))


def chooser_values(recovery: RecoveryGame, probs: ProbsLike) -> Mapping[InfosetKey, float]:
    """
    The chooser's counterfactual value at each gadget root information set,
    keyed by the original root augmented information set.
    """
    vector = counterfactual_values(recovery.game, probs, recovery.chooser)
    return {root_key: vector.values[chooser_key] for root_key, chooser_key in recovery.chooser_keys.items()}
