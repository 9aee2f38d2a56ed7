# tests/games/test_profile.py
import numpy as np
import pytest

from app.games import PLAYER1, PLAYER2, InfosetKey, StrategyError, StrategyProfile
from app.games.profile import normalize_slots


def test_uniform_profile_is_valid(leduc_game):
    profile = StrategyProfile.uniform(leduc_game)
    profile.validate()
    info = leduc_game.infosets[0]
    assert profile.distribution(info.key) == {action: 1.0 / len(info.actions) for action in info.actions}


def test_random_profiles_are_valid_and_seeded(kuhn_game, rng):
    first = StrategyProfile.random(kuhn_game, rng)
    first.validate()
    again = StrategyProfile.random(kuhn_game, np.random.default_rng(20140115))
    assert first == again


def test_normalize_all_zero_becomes_uniform(rps_game):
    weights = np.array([0.0, 0.0, 0.0, 2.0, 1.0, 1.0])
    probs = normalize_slots(rps_game, weights)
    np.testing.assert_allclose(probs, [1 / 3, 1 / 3, 1 / 3, 0.5, 0.25, 0.25])


def test_from_mapping(rps_game):
    p1 = InfosetKey(PLAYER1, (), "P1")
    profile = StrategyProfile.from_mapping(rps_game, {p1: {"R": 1.0}})
    assert profile.distribution(p1) == {"R": 1.0, "P": 0.0, "S": 0.0}
    # Player2 was not given and plays uniformly
    assert profile.distribution(rps_game.infosets[1].key)["P"] == pytest.approx(1 / 3)

    with pytest.raises(StrategyError):
        StrategyProfile.from_mapping(rps_game, {p1: {"R": 1.0}}, strict=True)
    with pytest.raises(StrategyError):
        StrategyProfile.from_mapping(rps_game, {p1: {"X": 1.0}})
    with pytest.raises(StrategyError):
        StrategyProfile.from_mapping(rps_game, {InfosetKey(PLAYER1, (), "nope"): {"R": 1.0}})


def test_validate_rejects_bad_distributions(rps_game):
    probs = StrategyProfile.uniform(rps_game).probs.copy()
    probs[0] = 0.9
    with pytest.raises(StrategyError):
        StrategyProfile(rps_game, probs).validate()
    with pytest.raises(StrategyError):
        StrategyProfile(rps_game, probs[:3])


def test_with_player_and_fragment(kuhn_game, rng):
    first = StrategyProfile.random(kuhn_game, rng)
    second = StrategyProfile.random(kuhn_game, rng)
    mixed = first.with_player(PLAYER2, second)
    for info in kuhn_game.infosets:
        source = second if info.player == PLAYER2 else first
        assert mixed.distribution(info.key) == source.distribution(info.key)

    fragment = first.fragment(PLAYER1)
    assert len(fragment) == 6
    assert first.replace(fragment.distributions) == first
    with pytest.raises(StrategyError):
        first.fragment(PLAYER1, [kuhn_game.infosets_of(PLAYER2)[0].key])


def test_to_mapping_round_trip(kuhn_game, rng):
    profile = StrategyProfile.random(kuhn_game, rng)
    rebuilt = StrategyProfile.from_mapping(kuhn_game, profile.to_mapping(), strict=True)
    np.testing.assert_array_equal(rebuilt.probs, profile.probs)
