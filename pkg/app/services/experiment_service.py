"""Experiment service: wires games, solvers and decomposition into the CLI commands"""
import logging
import time
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.baselines import all_cfvs_from_best_response, build_abstraction, unsafe_resolve_all
from app.cfrd import cfr_d, recover_full
from app.cfrd.algorithm import CFRDRun
from app.core.config import settings
from app.decomposition import FrontierFactory, SubgamePartition, all_cfvs_from_profile, partition_game
from app.games import GameDefinition, StrategyProfile, build_game, build_tree
from app.games.base import GameValidationError
from app.games.evaluation import expected_value, head_to_head
from app.games.factory import GameFactory
from app.games.validation import validate
from app.schemas.experiment import ExperimentConfig
from app.solvers import cfr_solve, exploitability
from app.solvers.best_response import best_response_values
from app.solvers.values import CfvVector
from app.utils.formatters import (
    COMPARISON_HEADER,
    CFRD_TRACE_HEADER,
    TRACE_HEADER,
    format_number,
    read_cfvs,
    read_strategy,
    write_cfvs,
    write_csv,
    write_strategy,
)

logger = logging.getLogger(__name__)


def value_against(game: GameDefinition, profile: StrategyProfile, original: StrategyProfile) -> float:
    """Average value of `profile` against `original`, over both seats."""
    first = head_to_head(game, profile, original)[0]
    second = head_to_head(game, original, profile)[1]
    return (first + second) / 2.0


class ExperimentService:
    """Runs one experiment command per call; every method returns a summary dict"""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.game = build_game(config.game)

    def partition(self) -> SubgamePartition:
        frontier = FrontierFactory.create(self.config.game, self.config.frontier)
        partition = partition_game(self.game, frontier)
        logger.info(
            f"Partitioned {self.game.name} at frontier {self.config.frontier!r}: "
            f"{len(partition.subgames)} subgames, {partition.root_infoset_count()} root information sets"
        )
        return partition

    def load_strategy(self) -> StrategyProfile:
        """The --strategy file, or a seeded random profile when only --seed is given"""
        if self.config.strategy:
            return read_strategy(self.game, self.config.strategy)
        if self.config.seed is not None:
            logger.info(f"No strategy file given; using a random profile with seed {self.config.seed}")
            return StrategyProfile.random(self.game, np.random.default_rng(self.config.seed))
        raise ValueError("This command needs --strategy or --seed")

    def solve(self) -> Dict[str, Any]:
        """Whole-game CFR: strategy file and exploitability trace"""
        config = self.config
        started = time.perf_counter()
        result = cfr_solve(self.game, config.iterations, eval_every=config.eval_every)
        final = exploitability(self.game, result.profile)
        value = expected_value(self.game, result.profile)[0]
        strategy_path = write_strategy(result.profile, config.output_path("cfr", "strategy.txt"))
        trace_path = write_csv(
            config.output_path("cfr", "trace.csv"),
            TRACE_HEADER,
            [(p.iteration, p.exploitability, p.elapsed_seconds) for p in result.trace],
            footer=[f"game_value={format_number(value)}", f"exploitability={format_number(final)}"],
        )
        logger.info(f"Solved {self.game.name} in {time.perf_counter() - started:.1f}s")
        return {
            "strategy": strategy_path,
            "trace": trace_path,
            "iterations": config.iterations,
            "exploitability": final,
            "game_value": value,
        }

    def _stored_cfvs(self, profile: StrategyProfile, partition: SubgamePartition) -> Dict[int, CfvVector]:
        if self.config.cfvs:
            return read_cfvs(self.config.cfvs)
        logger.info("No cfv file given; using the strategy's own root counterfactual values")
        return all_cfvs_from_profile(profile, partition)

    def _compare(
        self,
        original: StrategyProfile,
        partition: SubgamePartition,
        cfvs: Dict[int, CfvVector],
    ) -> Tuple[List[Tuple], Optional[StrategyProfile]]:
        rows = []
        recovered = None
        for count in self.config.recovery_iterations:
            safe = recover_full(self.game, partition, original, cfvs, count, workers=self.config.workers)
            unsafe = unsafe_resolve_all(self.game, partition, original, count)
            row = (
                count,
                exploitability(self.game, safe),
                exploitability(self.game, unsafe),
                value_against(self.game, safe, original),
                value_against(self.game, unsafe, original),
            )
            logger.info(f"Recovery with {count} iterations: safe {row[1]:.6g}, unsafe {row[2]:.6g}")
            rows.append(row)
            recovered = safe
        return rows, recovered

    def recover(self) -> Dict[str, Any]:
        """Safe and unsafe recovery of a stored strategy's subgames"""
        config = self.config
        original = self.load_strategy()
        partition = self.partition()
        cfvs = self._stored_cfvs(original, partition)
        rows, recovered = self._compare(original, partition, cfvs)
        comparison = write_csv(
            config.output_path("recovery.csv"),
            COMPARISON_HEADER,
            rows,
            footer=[f"original_exploitability={format_number(exploitability(self.game, original))}"],
        )
        strategy_path = write_strategy(recovered, config.output_path("recovered", "strategy.txt"))
        return {
            "comparison": comparison,
            "strategy": strategy_path,
            "safe_exploitability": rows[-1][1],
            "unsafe_exploitability": rows[-1][2],
        }

    def _cfrd_checkpoint(self, iteration: int, run: CFRDRun) -> float:
        profile = recover_full(
            self.game,
            run.partition,
            run.trunk_profile(),
            run.state.avg_cfvs(),
            self.config.recovery_iterations[0],
            workers=self.config.workers,
        )
        return exploitability(self.game, profile)

    def cfrd(self) -> Dict[str, Any]:
        """CFR-D: trunk strategy, averaged root cfvs, and exploitability after recovery"""
        config = self.config
        partition = self.partition()
        # each checkpoint runs a full recovery
        eval_every = config.eval_every or 0
        result = cfr_d(
            self.game,
            partition,
            config.trunk_iterations,
            config.subgame_iterations,
            workers=config.workers,
            eval_every=eval_every,
            on_checkpoint=self._cfrd_checkpoint if eval_every else None,
        )
        trunk_keys = sorted(partition.trunk_infosets, key=str)
        strategy_path = write_strategy(result.trunk_profile, config.output_path("cfrd", "trunk-strategy.txt"), trunk_keys)
        cfvs_path = write_cfvs(result.cfvs, config.output_path("cfrd", "cfvs.txt"))

        rows = []
        recovered: Optional[StrategyProfile] = None
        for count in config.recovery_iterations:
            profile = recover_full(self.game, partition, result.trunk_profile, result.cfvs, count, workers=config.workers)
            rows.append((count, exploitability(self.game, profile)))
            recovered = profile
        report = result.report
        registry = result.registry
        recovery_path = write_csv(
            config.output_path("cfrd", "recovery.csv"),
            ["recovery_iterations", "exploitability_chips"],
            rows,
            footer=[
                f"trunk_iterations={config.trunk_iterations}",
                f"subgame_iterations={config.subgame_iterations}",
                f"eps_s={format_number(report.eps_s)}",
                f"regret_bound={format_number(report.bound)}",
                f"peak_entries={registry.peak_entries}",
                f"trunk_entries={registry.persistent_entries}",
            ],
        )
        summary = {
            "strategy": strategy_path,
            "cfvs": cfvs_path,
            "recovery": recovery_path,
            "exploitability": rows[-1][1],
            "peak_entries": registry.peak_entries,
        }
        if result.trace:
            summary["trace"] = write_csv(
                config.output_path("cfrd", "trace.csv"),
                CFRD_TRACE_HEADER,
                [(p.iteration, config.subgame_iterations, p.exploitability, p.elapsed_seconds) for p in result.trace],
            )
        if recovered is not None and not partition.is_trivial():
            summary["recovered_strategy"] = write_strategy(recovered, config.output_path("cfrd", "recovered-strategy.txt"))
        return summary

    def resolve_abstract(self) -> Dict[str, Any]:
        """Safe and unsafe re-solving of the lifted abstract-game strategy"""
        config = self.config
        abstract, mapping = build_abstraction(self.game)
        solved = cfr_solve(abstract, config.iterations)
        original = mapping.lift(solved.profile)
        original_expl = exploitability(self.game, original)
        logger.info(f"Lifted abstract strategy is exploitable for {original_expl:.6g}")
        partition = self.partition()
        cfvs = all_cfvs_from_best_response(original, partition)
        rows, _ = self._compare(original, partition, cfvs)
        original_value = value_against(self.game, original, original)
        comparison = write_csv(
            config.output_path("resolve-abstract.csv"),
            COMPARISON_HEADER,
            rows,
            footer=[
                f"original_exploitability={format_number(original_expl)}",
                f"original_vs_orig={format_number(original_value)}",
            ],
        )
        strategy_path = write_strategy(original, config.output_path("abstract", "strategy.txt"))
        return {
            "comparison": comparison,
            "strategy": strategy_path,
            "original_exploitability": original_expl,
            "safe_exploitability": rows[-1][1],
            "unsafe_exploitability": rows[-1][2],
        }

    def exploit(self) -> Dict[str, Any]:
        """Exploitability and best-response values of a strategy file"""
        profile = self.load_strategy()
        first, second = best_response_values(self.game, profile)
        return {
            "game": self.game.name,
            "exploitability": (first + second) / 2.0,
            "best_response_player1": first,
            "best_response_player2": second,
            "game_value": expected_value(self.game, profile)[0],
        }


def validate_game(name: str) -> Dict[str, Any]:
    """
    Diagnostics of a built-in game, built without the factory cache so an
    invalid tree is reported rather than raised.

    Raises:
        GameValidationError: If the game fails any check
    """
    game = build_tree(GameFactory.create(name))
    diagnostics = validate(game)
    if not diagnostics.ok:
        raise GameValidationError(diagnostics.summary(), diagnostics)
    counts = {player: sum(1 for info in game.infosets if info.player == player) for player in (0, 1)}
    return {
        "game": game.name,
        "nodes": game.num_nodes,
        "leaves": len(game.leaves),
        "information_sets": game.num_infosets,
        "information_sets_player1": counts[0],
        "information_sets_player2": counts[1],
        "slots": game.num_slots,
        "tolerance": settings.PROBABILITY_TOLERANCE,
    }
