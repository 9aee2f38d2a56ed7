# app/cfrd/algorithm.py
"""
CFR-D: CFR on the trunk, re-solving every subgame each iteration.

Only the trunk accumulators and the running sums of root counterfactual
values persist across iterations. Each subgame's solver state lives for one
solve and is released before the next subgame starts.
"""
import logging
import time
from functools import partial
from typing import Callable, List, Optional, Set

import numpy as np

from app.cfrd.subgame import solve_subgame_mutual_cbr
from app.cfrd.types import CFRDResult, RegretBoundReport, SubgameSolution, TrunkState
from app.decomposition.partition import SubgamePartition, TrunkView, subgame_forest, trunk_game
from app.games.evaluation import reach_arrays
from app.games.profile import StrategyProfile, uniform_probabilities
from app.games.tree import GameDefinition
from app.solvers.accumulators import AccumulatorRegistry, AccumulatorTable
from app.solvers.cfr import CFRSolver, TracePoint, checkpoints
from app.worker.pool import run_tasks, worker_pool

logger = logging.getLogger(__name__)

CheckpointHook = Callable[[int, "CFRDRun"], Optional[float]]


def lift_trunk_probs(view: TrunkView, game: GameDefinition, trunk_probs: np.ndarray) -> np.ndarray:
    """Full-game slot probabilities: trunk from `trunk_probs`, subgames uniform."""
    probs = uniform_probabilities(game)
    for info in view.game.infosets:
        target = game.infoset_of(info.key)
        probs[target.slot_offset : target.slot_offset + len(target.actions)] = trunk_probs[
            info.slot_offset : info.slot_offset + len(info.actions)
        ]
    return probs


def _solve_job(job, partition: SubgamePartition, iterations: int, forests: List[GameDefinition]) -> SubgameSolution:
    index, root_reach = job
    return solve_subgame_mutual_cbr(
        partition.game, partition, index, None, iterations, root_reach=root_reach, forest=forests[index]
    )


class CFRDRun:
    """State of one CFR-D run; `step` performs one trunk iteration."""

    def __init__(
        self,
        game: GameDefinition,
        partition: SubgamePartition,
        subgame_iterations: int,
        registry: Optional[AccumulatorRegistry] = None,
    ):
        if subgame_iterations < 1:
            raise ValueError("CFR-D needs at least 1 subgame iteration")
        self.game = game
        self.partition = partition
        self.subgame_iterations = subgame_iterations
        self.registry = registry if registry is not None else AccumulatorRegistry()
        self.view = trunk_game(partition)
        table = AccumulatorTable(self.view.game, label="trunk")
        self.registry.register(table, persistent=True)
        self.state = TrunkState(table=table)
        self.solver = CFRSolver(self.view.game, table)
        self.forests = [subgame_forest(partition, index) for index in range(len(partition.subgames))]
        trunk_index = {int(source): node for node, source in enumerate(self.view.game.source)}
        self.root_nodes = [
            np.array([trunk_index[root] for root in subgame.roots], dtype=np.int64)
            for subgame in partition.subgames
        ]
        self.eps_s = 0.0

    def step(self, executor=None, workers: int = 1) -> None:
        probs = self.solver.current_probs()
        reach = reach_arrays(self.view.game, probs)
        jobs = [(index, reach[nodes]) for index, nodes in enumerate(self.root_nodes)]
        if executor is None and workers <= 1:
            solutions = [self._solve_serial(job) for job in jobs]
        else:
            solve = partial(_solve_job, partition=self.partition, iterations=self.subgame_iterations, forests=self.forests)
            solutions = run_tasks(solve, jobs, workers=workers, executor=executor)

        root_values = np.zeros(self.game.num_nodes)
        for solution in solutions:
            root_values[list(self.partition.subgames[solution.index].roots)] = solution.root_values
            self.state.accumulate(solution.cfvs)
            self.eps_s = max(self.eps_s, solution.eps_s)
        self.state.iterations += 1
        self.solver.iterate(self.view.leaf_values(root_values))

    def _solve_serial(self, job) -> SubgameSolution:
        index, root_reach = job
        return solve_subgame_mutual_cbr(
            self.game,
            self.partition,
            index,
            None,
            self.subgame_iterations,
            registry=self.registry,
            root_reach=root_reach,
            forest=self.forests[index],
        )

    def trunk_profile(self) -> StrategyProfile:
        """Full-game profile with the trunk average and uniform subgames."""
        return StrategyProfile(self.game, lift_trunk_probs(self.view, self.game, self.solver.table.average_probs()))

    def report(self) -> RegretBoundReport:
        trunk = self.view.game
        return RegretBoundReport(
            n_trunk=trunk.num_infosets,
            n_roots=self.partition.root_infoset_count(),
            max_actions=int(trunk.infoset_size.max()) if trunk.num_infosets else 1,
            iterations=self.state.iterations,
            eps_s=self.eps_s,
            utility_range=float(np.ptp(self.game.utility[self.game.leaves, 0])),
        )

    def result(self, trace: Optional[List[TracePoint]] = None) -> CFRDResult:
        return CFRDResult(
            trunk_profile=self.trunk_profile(),
            cfvs=self.state.avg_cfvs(),
            report=self.report(),
            state=self.state,
            registry=self.registry,
            trace=trace or [],
        )


def cfr_d(
    game: GameDefinition,
    partition: SubgamePartition,
    trunk_iterations: int,
    subgame_iterations: int,
    workers: int = 1,
    registry: Optional[AccumulatorRegistry] = None,
    eval_every: Optional[int] = 0,
    on_checkpoint: Optional[CheckpointHook] = None,
) -> CFRDResult:
    """
    Run CFR-D.

    `on_checkpoint(iteration, run)` is called at the evaluation checkpoints;
    when it returns a number, that number is recorded in the trace as the
    exploitability at that iteration.
    """
    if trunk_iterations < 1:
        raise ValueError("CFR-D needs at least 1 trunk iteration")
    run = CFRDRun(game, partition, subgame_iterations, registry)
    points: Set[int] = checkpoints(trunk_iterations, eval_every) if on_checkpoint else set()
    trace: List[TracePoint] = []
    started = time.perf_counter()
    with worker_pool(workers) as executor:
        for iteration in range(1, trunk_iterations + 1):
            run.step(executor=executor, workers=workers)
            if iteration in points:
                value = on_checkpoint(iteration, run)
                if value is not None:
                    trace.append(TracePoint(iteration, value, time.perf_counter() - started))
                    logger.info(
                        f"CFR-D iteration {iteration}: exploitability {value:.6g} "
                        f"({time.perf_counter() - started:.1f}s)"
                    )
    result = run.result(trace)
    logger.info(
        f"CFR-D finished {trunk_iterations} trunk iterations: eps_S={result.report.eps_s:.3g}, "
        f"peak accumulator entries {run.registry.peak_entries}"
    )
    return result
