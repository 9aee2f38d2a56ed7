# tests/decomposition/test_partition.py
import numpy as np
import pytest

from app.decomposition import (
    FrontierFactory,
    PartitionError,
    partition_game,
    subgame_forest,
    trunk_game,
)
from app.decomposition.partition import TRUNK
from app.games import LEAF, PLAYER1, PLAYER2, GameTreeBuilder, InfosetKey, StrategyProfile
from app.games.evaluation import expected_value, subtree_values


def partition(game, frontier="default"):
    return partition_game(game, FrontierFactory.create(game.name, frontier))


def test_rps_first_move(rps_game):
    split = partition(rps_game)
    assert len(split.subgames) == 1
    subgame = split.subgame(0)
    assert [rps_game.histories[node] for node in subgame.roots] == ["R", "P", "S"]
    assert sorted(str(key) for key in subgame.root_keys(PLAYER1)) == ["P1:P|@p2", "P1:R|@p2", "P1:S|@p2"]
    assert subgame.root_keys(PLAYER2) == [InfosetKey(PLAYER2, (), "P2")]
    assert split.trunk_infosets == {InfosetKey(PLAYER1, (), "P1")}
    assert split.root_infoset_count() == 4
    assert split.root_infoset_count(PLAYER1) == 3


def test_kuhn_first_action(kuhn_game):
    split = partition(kuhn_game)
    assert len(split.subgames) == 2
    by_action = {kuhn_game.histories[sub.roots[0]][-1]: sub for sub in split.subgames}
    assert set(by_action) == {"k", "b"}

    checked, bet = by_action["k"], by_action["b"]
    assert len(checked.roots) == len(bet.roots) == 6
    for subgame in (checked, bet):
        assert all(len(nodes) == 2 for p in (PLAYER1, PLAYER2) for nodes in subgame.root_infosets[p].values())
    assert {str(key) for key in checked.infoset_keys[PLAYER2]} == {"J.k", "Q.k", "K.k"}
    assert {str(key) for key in checked.infoset_keys[PLAYER1]} == {"J:k|J.kb", "Q:k|Q.kb", "K:k|K.kb"}
    assert bet.infoset_keys[PLAYER1] == frozenset()
    assert split.root_infoset_count() == 12
    assert len(split.trunk_infosets) == 3


def test_leduc_round(leduc_game):
    split = partition(leduc_game)
    assert len(split.subgames) == 5
    # Every history below a frontier belongs to exactly one subgame
    covered = np.concatenate([sub.nodes for sub in split.subgames])
    assert len(covered) == len(set(covered.tolist()))
    assert len(covered) + len(split.trunk) == leduc_game.num_nodes


def test_no_frontier_is_trivial(kuhn_game):
    split = partition(kuhn_game, "none")
    assert split.is_trivial()
    assert np.all(split.region == TRUNK)
    assert trunk_game(split).game is kuhn_game


def test_nested_frontier_is_rejected(kuhn_game):
    with pytest.raises(PartitionError, match="below"):
        partition_game(kuhn_game, ["J", "J/Q"])


def test_split_information_set_is_rejected(kuhn_game):
    """Only one member of player2's Q.k set becomes a root."""
    with pytest.raises(PartitionError, match="spans"):
        partition_game(kuhn_game, ["J/Q/k"])


def test_game_without_augmented_sets():
    builder = GameTreeBuilder("keyed")
    root = builder.add_root(PLAYER1, key=InfosetKey(PLAYER1, (), "x"))
    builder.add_child(root, "a", LEAF, utility=(1.0, -1.0))
    builder.add_child(root, "b", LEAF, utility=(-1.0, 1.0))
    with pytest.raises(PartitionError):
        partition_game(builder.build(), [])


def test_subgame_index_out_of_range(rps_game):
    with pytest.raises(PartitionError):
        partition(rps_game).subgame(1)


@pytest.mark.parametrize("name", ["kuhn", "leduc"])
def test_trunk_with_root_values_reproduces_game_value(name, request, rng):
    game = request.getfixturevalue(f"{name}_game")
    split = partition(game)
    view = trunk_game(split)
    assert {info.key for info in view.game.infosets} == split.trunk_infosets
    assert np.all(view.game.actor[view.pseudo_leaves] == LEAF)

    profile = StrategyProfile.random(game, rng)
    trunk_profile = StrategyProfile.from_mapping(
        view.game, {key: profile.distribution(key) for key in split.trunk_infosets}, strict=True
    )
    values = subtree_values(game, profile)
    trunk_value, _ = expected_value(view.game, trunk_profile, view.leaf_values(values))
    assert trunk_value == pytest.approx(expected_value(game, profile)[0], abs=1e-12)


def test_subgame_forest_roots(kuhn_game):
    split = partition(kuhn_game)
    reach = np.tile([0.5, 1.0, 1 / 6], (6, 1))
    forest = subgame_forest(split, 0, reach)
    assert len(forest.roots) == 6
    np.testing.assert_allclose(forest.root_reach, reach)
    assert {info.key for info in forest.infosets} == set().union(*split.subgame(0).infoset_keys)
    assert [kuhn_game.histories[s] for s in forest.source[forest.roots]] == [
        kuhn_game.histories[node] for node in split.subgame(0).roots
    ]


def test_frontier_factory():
    assert FrontierFactory.names("kuhn") == ["none", "default", "depth:<k>", "first-action"]
    assert FrontierFactory.create("rps", "default") is FrontierFactory.create("rps", "first-move")
    with pytest.raises(PartitionError):
        FrontierFactory.create("kuhn", "round")
    with pytest.raises(PartitionError):
        FrontierFactory.create("kuhn", "depth:two")


def test_depth_frontier(kuhn_game):
    """Cards link every first decision through one player or the other, so depth 2 gives one subgame."""
    split = partition(kuhn_game, "depth:2")
    assert len(split.subgames) == 1
    assert len(split.subgame(0).roots) == 6
    assert split.trunk_infosets == frozenset()


def closed_frontier(game, seeds):
    """`seeds` plus every same-depth decision node sharing an augmented set with them, to a fixpoint."""
    depth = game.depth[seeds[0]]
    candidates = [
        node for node in np.nonzero(game.depth == depth)[0].tolist() if game.actor[node] in (PLAYER1, PLAYER2)
    ]
    chosen = set(seeds)
    while True:
        keys = {game.augmented[node][player] for node in chosen for player in (PLAYER1, PLAYER2)}
        grown = {node for node in candidates if any(game.augmented[node][p] in keys for p in (PLAYER1, PLAYER2))}
        if grown <= chosen:
            return sorted(chosen)
        chosen |= grown


def check_partition(game, split):
    covered = np.concatenate([split.trunk] + [subgame.nodes for subgame in split.subgames])
    np.testing.assert_array_equal(np.sort(covered), np.arange(game.num_nodes))

    roots = {node for subgame in split.subgames for node in subgame.roots}
    for node in range(game.num_nodes):
        if game.parent[node] >= 0 and node not in roots:
            assert split.region[node] == split.region[game.parent[node]]
    for info in game.infosets:
        assert len(set(split.region[list(info.members)].tolist())) == 1

    for player in (PLAYER1, PLAYER2):
        owners = {}
        for subgame in split.subgames:
            for key in subgame.root_keys(player):
                owners.setdefault(key, []).append(subgame.index)
        assert all(len(found) == 1 for found in owners.values())
        for subgame in split.subgames:
            assert {game.augmented[node][player] for node in subgame.roots} == set(subgame.root_keys(player))


@pytest.mark.parametrize("name", ["kuhn_game", "leduc_game"])
def test_random_frontiers_partition_or_fail_loudly(name, request, rng):
    game = request.getfixturevalue(name)
    decisions = np.nonzero(np.isin(game.actor, [PLAYER1, PLAYER2]) & (game.depth > 0))[0]
    accepted = 0
    for _ in range(12):
        first = int(rng.choice(decisions))
        same_depth = decisions[game.depth[decisions] == game.depth[first]]
        seeds = [first, int(rng.choice(same_depth))]
        try:
            split = partition_game(game, closed_frontier(game, seeds))
        except PartitionError:
            continue
        check_partition(game, split)
        accepted += 1
    assert accepted > 0
