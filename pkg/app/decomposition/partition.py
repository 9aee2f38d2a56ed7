# app/decomposition/partition.py
"""
Trunk/subgame decomposition.

Frontier histories are clustered into grouped sets: two roots belong to the
same subgame when they share an augmented information set of either player,
closed transitively. Each cluster plus all its descendants is a subgame;
every other history is trunk.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple, Union

import numpy as np

from app.decomposition.base import PartitionError
from app.games.base import LEAF, PLAYERS
from app.games.tree import GameDefinition, GameTreeBuilder
from app.games.types import InfosetKey

logger = logging.getLogger(__name__)

TRUNK = -1

Frontier = Union[Callable[[GameDefinition, int], bool], Iterable[Union[int, str]]]


@dataclass(frozen=True, eq=False)
class Subgame:
    """One grouped set of roots and everything below it."""

    index: int
    roots: Tuple[int, ...]
    nodes: np.ndarray
    root_infosets: Tuple[Dict[InfosetKey, Tuple[int, ...]], Dict[InfosetKey, Tuple[int, ...]]]
    infoset_keys: Tuple[FrozenSet[InfosetKey], FrozenSet[InfosetKey]]

    def root_keys(self, player: int) -> List[InfosetKey]:
        return list(self.root_infosets[player])


@dataclass(frozen=True, eq=False)
class SubgamePartition:
    game: GameDefinition
    region: np.ndarray
    subgames: Tuple[Subgame, ...]

    @property
    def trunk(self) -> np.ndarray:
        return np.nonzero(self.region == TRUNK)[0]

    @property
    def trunk_infosets(self) -> FrozenSet[InfosetKey]:
        return frozenset(info.key for info in self.game.infosets if self.region[info.members[0]] == TRUNK)

    def subgame(self, index: int) -> Subgame:
        try:
            return self.subgames[index]
        except IndexError:
            raise PartitionError(f"Subgame index {index} out of range ({len(self.subgames)} subgames)")

    def root_infoset_count(self, player: Optional[int] = None) -> int:
        players = PLAYERS if player is None else (player,)
        return sum(len(subgame.root_infosets[p]) for subgame in self.subgames for p in players)

    def is_trivial(self) -> bool:
        return not self.subgames


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {item: item for item in items}

    def find(self, item: int) -> int:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, first: int, second: int) -> None:
        a, b = self.find(first), self.find(second)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _marked_nodes(game: GameDefinition, frontier: Frontier) -> np.ndarray:
    marked = np.zeros(game.num_nodes, dtype=bool)
    if callable(frontier):
        for node in range(game.num_nodes):
            marked[node] = bool(frontier(game, node))
    else:
        for item in frontier:
            marked[game.node(item) if isinstance(item, str) else int(item)] = True
    marked &= game.actor != LEAF
    return marked


def partition_game(game: GameDefinition, frontier: Frontier) -> SubgamePartition:
    """
    Split `game` at the histories marked by `frontier`.

    Raises:
        PartitionError: If a marked history lies below another one, the game
            carries no augmented information sets, or some information set
            ends up on both sides of the split
    """
    if game.augmented is None:
        raise PartitionError(f"Game {game.name} carries no augmented information sets")
    marked = _marked_nodes(game, frontier)

    below_marked = np.zeros(game.num_nodes, dtype=bool)
    for start, stop in game.levels[1:]:
        parents = game.parent[start:stop]
        below_marked[start:stop] = below_marked[parents] | marked[parents]
    nested = np.nonzero(marked & below_marked)[0]
    if len(nested):
        raise PartitionError(
            f"Frontier history {game.histories[nested[0]]!r} lies below another frontier history"
        )

    roots = np.nonzero(marked)[0].tolist()
    clusters = _UnionFind(roots)
    for player in PLAYERS:
        first_seen: Dict[InfosetKey, int] = {}
        for node in roots:
            key = game.augmented[node][player]
            if key in first_seen:
                clusters.union(first_seen[key], node)
            else:
                first_seen[key] = node

    cluster_index: Dict[int, int] = {}
    for node in roots:
        cluster_index.setdefault(clusters.find(node), len(cluster_index))

    region = np.full(game.num_nodes, TRUNK, dtype=np.int64)
    for node in range(game.num_nodes):
        if marked[node]:
            region[node] = cluster_index[clusters.find(node)]
        elif game.parent[node] >= 0:
            region[node] = region[game.parent[node]]

    _check_closed(game, region)

    subgames = []
    for index in range(len(cluster_index)):
        members = tuple(node for node in roots if region[node] == index)
        root_infosets = tuple(
            _group(game, members, player) for player in PLAYERS
        )
        nodes = np.nonzero(region == index)[0]
        keys = tuple(
            frozenset(
                info.key
                for info in game.infosets_of(player)
                if region[info.members[0]] == index
            )
            for player in PLAYERS
        )
        subgames.append(
            Subgame(index=index, roots=members, nodes=nodes, root_infosets=root_infosets, infoset_keys=keys)
        )
    logger.info(
        f"Partitioned {game.name}: {len(subgames)} subgames, "
        f"{int(np.sum(region == TRUNK))} trunk histories"
    )
    return SubgamePartition(game=game, region=region, subgames=tuple(subgames))


def _group(game: GameDefinition, roots: Tuple[int, ...], player: int) -> Dict[InfosetKey, Tuple[int, ...]]:
    groups: Dict[InfosetKey, List[int]] = {}
    for node in roots:
        groups.setdefault(game.augmented[node][player], []).append(node)
    return {key: tuple(nodes) for key, nodes in groups.items()}


def _check_closed(game: GameDefinition, region: np.ndarray) -> None:
    for info in game.infosets:
        regions = set(region[list(info.members)].tolist())
        if len(regions) > 1:
            raise PartitionError(f"Information set {info.key} spans trunk/subgame boundary")
    for player in PLAYERS:
        seen: Dict[InfosetKey, int] = {}
        for node in np.nonzero(np.isin(game.actor, PLAYERS))[0]:
            key = game.augmented[node][player]
            owner = seen.setdefault(key, int(region[node]))
            if owner != region[node]:
                raise PartitionError(
                    f"Augmented information set {key} of player {player + 1} spans two regions "
                    f"(at {game.histories[node]!r})"
                )


def _copy_kwargs(game: GameDefinition, node: int, utility_scale: float = 1.0) -> dict:
    actor = int(game.actor[node])
    kwargs = {"source": node, "history": game.histories[node]}
    if actor == LEAF:
        kwargs["utility"] = game.utility[node] * utility_scale
    elif actor in PLAYERS:
        kwargs["key"] = game.infosets[game.infoset[node]].key
    return kwargs


def copy_subtree(
    builder: GameTreeBuilder,
    game: GameDefinition,
    node: int,
    parent: int,
    action: Optional[str],
    chance_prob: float = 1.0,
    utility_scale: float = 1.0,
    root_reach=(1.0, 1.0, 1.0),
) -> int:
    """
    Copy the subtree of `game` at `node` into `builder`, below `parent` (or
    as a new root when `parent` is negative). Leaf utilities are multiplied
    by `utility_scale`. Returns the builder index of the copied node.
    """
    actor = int(game.actor[node])
    if parent < 0:
        top = builder.add_root(actor, reach=root_reach, **_copy_kwargs(game, node, utility_scale))
    else:
        top = builder.add_child(parent, action, actor, chance_prob=chance_prob, **_copy_kwargs(game, node, utility_scale))
    stack = [(node, top)]
    while stack:
        original, copied = stack.pop()
        for child in game.children(original):
            child_actor = int(game.actor[child])
            index = builder.add_child(
                copied,
                game.node_actions[original][child - game.child_start[original]],
                child_actor,
                chance_prob=float(game.chance_prob[child]),
                **_copy_kwargs(game, child, utility_scale),
            )
            stack.append((child, index))
    return top


@dataclass(frozen=True, eq=False)
class TrunkView:
    """
    The trunk as a game of its own: subgame roots become pseudo-leaves whose
    values are supplied by the caller.
    """

    game: GameDefinition
    pseudo_leaves: np.ndarray
    pseudo_sources: np.ndarray
    pseudo_subgame: np.ndarray

    def leaf_values(self, root_values: np.ndarray) -> np.ndarray:
        """Player1 leaf values with pseudo-leaves set from original-node values."""
        values = self.game.utility[:, 0].copy()
        values[self.pseudo_leaves] = root_values[self.pseudo_sources]
        return values


def trunk_game(partition: SubgamePartition) -> TrunkView:
    game = partition.game
    if partition.is_trivial():
        empty = np.zeros(0, dtype=np.int64)
        return TrunkView(game=game, pseudo_leaves=empty, pseudo_sources=empty, pseudo_subgame=empty)

    builder = GameTreeBuilder(f"{game.name}/trunk")
    copied: Dict[int, int] = {}
    for node in range(game.num_nodes):
        if partition.region[node] != TRUNK and (game.parent[node] < 0 or partition.region[game.parent[node]] != TRUNK):
            continue
        is_root = partition.region[node] != TRUNK
        actor = LEAF if is_root else int(game.actor[node])
        kwargs = {"source": node, "history": game.histories[node]}
        if not is_root:
            kwargs = _copy_kwargs(game, node)
        parent = int(game.parent[node])
        if parent < 0:
            copied[node] = builder.add_root(actor, reach=tuple(game.root_reach[node]), **kwargs)
        else:
            copied[node] = builder.add_child(
                copied[parent],
                game.node_actions[parent][node - game.child_start[parent]],
                actor,
                chance_prob=float(game.chance_prob[node]),
                **kwargs,
            )
    trunk = builder.build()
    pseudo = np.nonzero((trunk.actor == LEAF) & (partition.region[trunk.source] != TRUNK))[0]
    sources = trunk.source[pseudo]
    return TrunkView(game=trunk, pseudo_leaves=pseudo, pseudo_sources=sources, pseudo_subgame=partition.region[sources])


def subgame_forest(
    partition: SubgamePartition,
    index: int,
    root_reach: Optional[np.ndarray] = None,
) -> GameDefinition:
    """
    The subgame as a forest: one root per subgame root, each carrying the
    reach contributions (player1, player2, chance) it receives from the trunk.
    """
    game = partition.game
    subgame = partition.subgame(index)
    reach = np.ones((len(subgame.roots), 3)) if root_reach is None else np.asarray(root_reach, dtype=np.float64)
    builder = GameTreeBuilder(f"{game.name}/subgame-{index}")
    for position, root in enumerate(subgame.roots):
        copy_subtree(builder, game, root, -1, None, root_reach=tuple(reach[position]))
    return builder.build()
