# tests/solvers/test_values.py
import numpy as np
import pytest

from app.games import PLAYER1, PLAYER2, InfosetKey, StrategyProfile
from app.games.evaluation import expected_value
from app.solvers import AccumulatorRegistry, AccumulatorTable, counterfactual_values
from app.solvers.values import node_counterfactual_values


def test_rps_counterfactual_values_are_zero_at_equilibrium(rps_game):
    vector = counterfactual_values(rps_game, StrategyProfile.uniform(rps_game), PLAYER2)
    key = InfosetKey(PLAYER2, (), "P2")
    assert vector[key] == pytest.approx(0.0, abs=1e-15)
    assert all(value == pytest.approx(0.0, abs=1e-15) for value in vector.action_values[key].values())


def test_first_decisions_sum_to_expected_value(kuhn_game, rng):
    profile = StrategyProfile.random(kuhn_game, rng)
    vector = counterfactual_values(kuhn_game, profile, PLAYER1)
    first = sum(vector[InfosetKey(PLAYER1, (), card)] for card in ("J", "Q", "K"))
    assert first == pytest.approx(expected_value(kuhn_game, profile)[PLAYER1], abs=1e-12)


def test_infoset_value_is_the_policy_average(kuhn_game, rng):
    profile = StrategyProfile.random(kuhn_game, rng)
    vector = counterfactual_values(kuhn_game, profile, PLAYER2)
    for key, actions in vector.action_values.items():
        mixed = sum(profile.distribution(key)[action] * value for action, value in actions.items())
        assert vector[key] == pytest.approx(mixed, abs=1e-12)


def test_values_ignore_own_reach(kuhn_game, rng):
    """A player's own earlier play does not change their counterfactual values."""
    profile = StrategyProfile.random(kuhn_game, rng)
    other = profile.replace({InfosetKey(PLAYER1, (), "J"): {"k": 0.0, "b": 1.0}})
    key = InfosetKey(PLAYER1, (("J", "k"),), "J.kb")
    assert counterfactual_values(kuhn_game, other, PLAYER1)[key] == pytest.approx(
        counterfactual_values(kuhn_game, profile, PLAYER1)[key], abs=1e-15
    )
    node = kuhn_game.node("J/Q/k/b")
    assert node_counterfactual_values(kuhn_game, other, PLAYER1)[node] == pytest.approx(
        node_counterfactual_values(kuhn_game, profile, PLAYER1)[node]
    )


def test_accumulator_table(kuhn_game):
    table = AccumulatorTable(kuhn_game, label="kuhn")
    assert table.entries == kuhn_game.num_slots == 24
    assert len(list(table.keys())) == 24
    assert table.entry(InfosetKey(PLAYER1, (), "J"), "b") == (0.0, 0.0)
    np.testing.assert_allclose(table.average_probs(), StrategyProfile.uniform(kuhn_game).probs)

    table.regret[0] = 1.0
    copy = table.snapshot()
    table.regret[0] = 2.0
    assert copy.regret[0] == 1.0


def test_registry_tracks_live_entries(kuhn_game, rps_game):
    registry = AccumulatorRegistry()
    trunk = registry.register(AccumulatorTable(kuhn_game, label="trunk"), persistent=True)
    for _ in range(3):
        transient = registry.register(AccumulatorTable(rps_game, label="sub"), persistent=False)
        assert registry.live_entries == 24 + 6
        registry.release(transient)
    assert registry.live_entries == 24
    assert registry.peak_entries == 30
    assert registry.persistent_entries == 24
    assert registry.max_transient_entries() == 6
    assert registry.persistent_keys() == trunk.infoset_keys()
    assert len(registry.events) == 4


def check_values_against_enumeration(game, profile, oracle):
    for player in (PLAYER1, PLAYER2):
        vector = counterfactual_values(game, profile, player)
        orientation = 1.0 if player == PLAYER1 else -1.0
        for info in game.infosets_of(player):
            own = [oracle.path_reach(game, profile.probs, h)[player] for h in info.members]
            assert np.allclose(own, own[0], atol=1e-15)
            for action in info.actions:
                brute = sum(
                    float(np.prod(oracle.path_reach(game, profile.probs, h)))
                    * oracle.value(game, profile.probs, game.child(h, action))
                    * orientation
                    for h in info.members
                )
                assert own[0] * vector.action_values[info.key][action] == pytest.approx(brute, abs=1e-10)


@pytest.mark.parametrize("name", ["rps_game", "kuhn_game"])
def test_own_reach_times_value_is_the_expected_utility_through_an_action(name, request, rng, oracle):
    game = request.getfixturevalue(name)
    check_values_against_enumeration(game, StrategyProfile.random(game, rng), oracle)


@pytest.mark.slow
def test_leduc_values_match_enumeration(leduc_game, rng, oracle):
    check_values_against_enumeration(leduc_game, StrategyProfile.random(leduc_game, rng), oracle)
