# tests/services/test_experiment_service.py
import numpy as np
import pytest

from app.baselines import UnsupportedGameError
from app.decomposition import FrontierFactory, all_cfvs_from_profile, partition_game
from app.games import PLAYER1, InfosetKey, StrategyProfile, UnknownGameError
from app.schemas import ExperimentConfig
from app.services.experiment_service import ExperimentService, validate_game, value_against
from app.solvers import exploitability
from app.utils.formatters import read_csv, read_strategy, write_cfvs, write_strategy


def service(output_dir, **values):
    return ExperimentService(ExperimentConfig(out=str(output_dir), **values))


def test_solve_writes_strategy_and_trace(output_dir):
    summary = service(output_dir, game="kuhn", iterations=100).solve()
    assert summary["strategy"] == str(output_dir / "kuhn-cfr-strategy.txt")
    rows = read_csv(summary["trace"])
    assert [int(row["iteration"]) for row in rows] == [1, 2, 4, 8, 16, 32, 64, 100]
    footer = open(summary["trace"]).read().splitlines()[-2:]
    assert footer[0].startswith("# game_value=")
    assert footer[1] == f"# exploitability={summary['exploitability']:.17g}"


def test_solve_without_trace(output_dir):
    summary = service(output_dir, game="rps", iterations=10, eval_every=0).solve()
    assert read_csv(summary["trace"]) == []


def test_exploit(output_dir, rps_game):
    path = write_strategy(StrategyProfile.uniform(rps_game), str(output_dir / "uniform.txt"))
    summary = service(output_dir, game="rps", strategy=path).exploit()
    assert summary["exploitability"] == pytest.approx(0.0, abs=1e-15)
    assert summary["game_value"] == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(ValueError, match="--strategy"):
        service(output_dir, game="rps").exploit()


def test_value_against_itself_is_zero(kuhn_game, rng):
    profile = StrategyProfile.random(kuhn_game, rng)
    assert value_against(kuhn_game, profile, profile) == pytest.approx(0.0, abs=1e-15)


def test_recover_compares_safe_and_unsafe(output_dir, rps_game):
    leaning = StrategyProfile.uniform(rps_game).replace({InfosetKey(PLAYER1, (), "P1"): {"R": 0.4, "P": 0.3, "S": 0.3}})
    path = write_strategy(leaning, str(output_dir / "leaning.txt"))
    summary = service(output_dir, game="rps", strategy=path, recovery_iterations=[50, 200]).recover()

    rows = read_csv(summary["comparison"])
    assert [row["iterations"] for row in rows] == ["50", "200"]
    assert float(rows[-1]["safe_expl"]) < float(rows[-1]["unsafe_expl"])
    assert summary["safe_exploitability"] == pytest.approx(float(rows[-1]["safe_expl"]))
    footer = open(summary["comparison"]).read().splitlines()[-1]
    assert float(footer.split("=")[1]) == pytest.approx(0.05)


def test_recover_with_stored_values(output_dir, rps_game):
    uniform = StrategyProfile.uniform(rps_game)
    split = partition_game(rps_game, FrontierFactory.create("rps", "default"))
    strategy = write_strategy(uniform, str(output_dir / "uniform.txt"))
    cfvs = write_cfvs(all_cfvs_from_profile(uniform, split), str(output_dir / "cfvs.txt"))
    summary = service(output_dir, game="rps", strategy=strategy, cfvs=cfvs, recovery_iterations=[20]).recover()
    assert summary["safe_exploitability"] == pytest.approx(0.0, abs=1e-12)


def test_cfrd_outputs(output_dir):
    summary = service(
        output_dir, game="kuhn", trunk_iterations=8, subgame_iterations=5, recovery_iterations=[10], eval_every=4
    ).cfrd()
    assert len(open(summary["strategy"]).read().splitlines()) == 3
    assert len(open(summary["cfvs"]).read().splitlines()) == 12
    assert [row["iteration"] for row in read_csv(summary["trace"])] == ["4", "8"]
    text = open(summary["recovery"]).read()
    for name in ("trunk_iterations=8", "subgame_iterations=5", "eps_s=", "regret_bound=", "peak_entries=", "trunk_entries=6"):
        assert f"# {name}" in text
    assert "recovered_strategy" in summary


def test_cfrd_without_checkpoints_skips_trace(output_dir):
    summary = service(output_dir, game="rps", trunk_iterations=4, subgame_iterations=2, recovery_iterations=[5]).cfrd()
    assert "trace" not in summary
    assert summary["exploitability"] == pytest.approx(0.0, abs=1e-12)


def test_resolve_abstract_needs_leduc(output_dir):
    with pytest.raises(UnsupportedGameError):
        service(output_dir, game="kuhn").resolve_abstract()


@pytest.mark.slow
def test_resolve_abstract(output_dir):
    summary = service(output_dir, game="leduc", iterations=200, recovery_iterations=[50]).resolve_abstract()
    rows = read_csv(summary["comparison"])
    assert len(rows) == 1
    assert summary["original_exploitability"] > 0.0


def test_validate_game():
    summary = validate_game("kuhn")
    assert summary["nodes"] == 58
    assert summary["information_sets_player1"] == summary["information_sets_player2"] == 6
    assert summary["slots"] == 24
    with pytest.raises(UnknownGameError):
        validate_game("chess")


def test_seed_gives_a_reproducible_random_profile(output_dir, kuhn_game):
    expected = exploitability(kuhn_game, StrategyProfile.random(kuhn_game, np.random.default_rng(7)))
    first = service(output_dir, game="kuhn", seed=7).exploit()
    second = service(output_dir, game="kuhn", seed=7).exploit()
    other = service(output_dir, game="kuhn", seed=8).exploit()
    assert first["exploitability"] == second["exploitability"] == pytest.approx(expected, abs=1e-15)
    assert other["exploitability"] != first["exploitability"]


def test_recover_from_seeded_profile(output_dir):
    summary = service(output_dir, game="kuhn", seed=3, recovery_iterations=[20]).recover()
    assert len(read_csv(summary["comparison"])) == 1
    with pytest.raises(ValueError, match="--seed"):
        service(output_dir, game="kuhn").recover()


def test_cfrd_writes_the_last_sweep_profile(output_dir, kuhn_game):
    summary = service(
        output_dir, game="kuhn", trunk_iterations=4, subgame_iterations=3, recovery_iterations=[5, 15]
    ).cfrd()
    rows = read_csv(summary["recovery"])
    recovered = read_strategy(kuhn_game, summary["recovered_strategy"], strict=True)
    assert [row["recovery_iterations"] for row in rows] == ["5", "15"]
    assert exploitability(kuhn_game, recovered) == pytest.approx(float(rows[-1]["exploitability_chips"]), abs=1e-12)
