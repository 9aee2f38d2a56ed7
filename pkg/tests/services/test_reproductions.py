# tests/services/test_reproductions.py
"""
Leduc experiment numbers at desk scale. Every test here is slow; the
full-scale runs also need CFRD_FULL_SCALE set.
"""
import math
import os
from pathlib import Path

import pytest

from app.baselines import unsafe_resolve_all
from app.cfrd import cfr_d, recover_full
from app.core.config import settings
from app.decomposition import FrontierFactory, all_cfvs_from_profile, partition_game
from app.schemas import load_experiment_config
from app.services.experiment_service import ExperimentService
from app.solvers import cfr_solve, exploitability

PRESETS = str(Path(__file__).parent.parent.parent / "experiments.yaml")

full_scale = pytest.mark.skipif(
    not os.getenv("CFRD_FULL_SCALE"), reason="full-scale run; set CFRD_FULL_SCALE=1 to enable"
)

pytestmark = pytest.mark.slow


def preset(name, output_dir, **overrides):
    return load_experiment_config(name, {"out": str(output_dir), "workers": settings.WORKERS, **overrides}, PRESETS)


@pytest.fixture(scope="module")
def leduc_solved(leduc_game):
    return cfr_solve(leduc_game, 40_000).profile


@pytest.fixture(scope="module")
def leduc_split(leduc_game):
    return partition_game(leduc_game, FrontierFactory.create("leduc", "round"))


@pytest.fixture(scope="module")
def recovery_sweep(leduc_game, leduc_solved, leduc_split):
    cfvs = all_cfvs_from_profile(leduc_solved, leduc_split)
    return {
        count: exploitability(
            leduc_game, recover_full(leduc_game, leduc_split, leduc_solved, cfvs, count, workers=settings.WORKERS)
        )
        for count in (100, 1_000, 10_000)
    }


def test_cfr_reaches_five_millichips(leduc_game, leduc_solved):
    assert exploitability(leduc_game, leduc_solved) <= 0.005


def test_safe_recovery_improves_with_iterations(recovery_sweep):
    values = [recovery_sweep[count] for count in sorted(recovery_sweep)]
    assert all(later < earlier for earlier, later in zip(values, values[1:]))
    assert values[-1] <= values[0] / 3.0


def test_unsafe_recovery_plateaus(leduc_game, leduc_solved, leduc_split, recovery_sweep):
    unsafe = {
        count: exploitability(leduc_game, unsafe_resolve_all(leduc_game, leduc_split, leduc_solved, count))
        for count in (3_125, 10_000)
    }
    for value in unsafe.values():
        assert 0.04 <= value <= 0.16
    # More iterations do not bring the unsafe strategy towards equilibrium
    assert unsafe[10_000] >= 0.5 * unsafe[3_125]
    assert recovery_sweep[10_000] < unsafe[10_000]


def test_resolving_the_lifted_abstract_strategy(output_dir):
    config = preset("leduc-resolve-abstract", output_dir, recovery_iterations=[2_000])
    summary = ExperimentService(config).resolve_abstract()
    assert summary["original_exploitability"] == pytest.approx(0.382, abs=0.05)
    assert 0.21 <= summary["safe_exploitability"] <= 0.32
    assert summary["unsafe_exploitability"] >= 0.33


@full_scale
def test_cfrd_at_full_scale(output_dir):
    summary = ExperimentService(preset("leduc-cfrd", output_dir, recovery_iterations=[200_000])).cfrd()
    assert 0.003 <= summary["exploitability"] <= 0.015


@full_scale
def test_cfrd_with_long_recovery(leduc_game, leduc_split, output_dir):
    config = preset("leduc-cfrd", output_dir)
    result = cfr_d(
        leduc_game, leduc_split, config.trunk_iterations, config.subgame_iterations, workers=config.workers
    )
    recovered = recover_full(
        leduc_game, leduc_split, result.trunk_profile, result.cfvs, 6_400_000, workers=config.workers
    )
    assert exploitability(leduc_game, recovered) <= 0.006


@full_scale
def test_safe_recovery_error_shrinks_like_inverse_square_root(leduc_game, leduc_split):
    solved = cfr_solve(leduc_game, 1_000_000).profile
    cfvs = all_cfvs_from_profile(solved, leduc_split)
    counts = (10_000, 100_000, 1_000_000)
    values = [
        exploitability(leduc_game, recover_full(leduc_game, leduc_split, solved, cfvs, count, workers=settings.WORKERS))
        for count in counts
    ]
    assert values[-1] <= 0.01
    slope = (math.log(values[-1]) - math.log(values[0])) / (math.log(counts[-1]) - math.log(counts[0]))
    assert slope == pytest.approx(-0.5, abs=0.15)
