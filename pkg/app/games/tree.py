# app/games/tree.py
"""
Flat game-tree representation shared by every solver.

Nodes are stored breadth-first: parents precede children, the children of a
node are contiguous, and each depth level is a contiguous slice. Every pass
over the tree (reach, subtree values, counterfactual values) is a short loop
over levels with numpy doing the per-level work.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.games.base import (
    ACTOR_NAMES,
    CHANCE,
    LEAF,
    PLAYERS,
    GameError,
    GameRules,
    StrategyError,
)
from app.games.types import InfosetInfo, InfosetKey

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GameDefinition:
    """
    Immutable extensive-form game (or forest of subtrees of one).

    A forest has several roots; `root_reach[r]` holds the reach contributions
    (player1, player2, chance) each root carries in from outside the forest.
    Utilities are stored for both players; the solvers rely on zero-sum
    leaves and work with the player1 column.
    """

    name: str
    actor: np.ndarray
    parent: np.ndarray
    action_index: np.ndarray
    depth: np.ndarray
    chance_prob: np.ndarray
    utility: np.ndarray
    infoset: np.ndarray
    edge_slot: np.ndarray
    child_start: np.ndarray
    child_count: np.ndarray
    root_reach: np.ndarray
    levels: Tuple[Tuple[int, int], ...]
    histories: Tuple[str, ...]
    node_actions: Tuple[Tuple[str, ...], ...]
    infosets: Tuple[InfosetInfo, ...]
    slot_infoset: np.ndarray
    infoset_offset: np.ndarray
    infoset_size: np.ndarray
    infoset_player: np.ndarray
    infoset_rep: np.ndarray
    player_edges: Tuple[np.ndarray, np.ndarray]
    augmented: Optional[Tuple[Tuple[InfosetKey, InfosetKey], ...]]
    source: np.ndarray
    infoset_index: Mapping[InfosetKey, int]
    history_index: Mapping[str, int]

    @property
    def num_nodes(self) -> int:
        return len(self.actor)

    @property
    def num_infosets(self) -> int:
        return len(self.infosets)

    @property
    def num_slots(self) -> int:
        return len(self.slot_infoset)

    @property
    def roots(self) -> np.ndarray:
        return np.arange(self.levels[0][0], self.levels[0][1])

    @property
    def unit_roots(self) -> bool:
        return bool(np.all(self.root_reach == 1.0))

    @property
    def leaves(self) -> np.ndarray:
        return np.nonzero(self.actor == LEAF)[0]

    def level_slices(self) -> List[slice]:
        return [slice(start, stop) for start, stop in self.levels]

    def children(self, node: int) -> range:
        start = int(self.child_start[node])
        return range(start, start + int(self.child_count[node]))

    def child(self, node: int, action: str) -> int:
        try:
            position = self.node_actions[node].index(action)
        except ValueError:
            raise GameError(f"Action {action!r} is not legal at history {self.histories[node]!r}")
        return int(self.child_start[node]) + position

    def node(self, history: str) -> int:
        """Node index of a history label (actions joined by '/')."""
        try:
            return self.history_index[history]
        except KeyError:
            raise GameError(f"Unknown history {history!r} in game {self.name}")

    def path(self, node: int) -> List[int]:
        """Nodes from the root down to `node`, inclusive."""
        nodes = [node]
        while self.parent[nodes[-1]] >= 0:
            nodes.append(int(self.parent[nodes[-1]]))
        nodes.reverse()
        return nodes

    def infoset_of(self, key: InfosetKey) -> InfosetInfo:
        try:
            return self.infosets[self.infoset_index[key]]
        except KeyError:
            raise StrategyError(f"Unknown information set {key} in game {self.name}")

    def infosets_of(self, player: int) -> List[InfosetInfo]:
        return [info for info in self.infosets if info.player == player]

    def has_augmented(self) -> bool:
        return self.augmented is not None


@dataclass
class _PendingNode:
    parent: int
    action: Optional[str]
    action_pos: int
    actor: int
    chance_prob: float
    utility: Tuple[float, float]
    label: Optional[str]
    key: Optional[InfosetKey]
    observations: Optional[Tuple[Optional[str], Optional[str]]]
    reach: Tuple[float, float, float]
    source: int
    history: Optional[str]
    children: List[int]


class GameTreeBuilder:
    """
    Incremental construction of a GameDefinition.

    Decision nodes carry either a `label` (information sets are grouped by
    (player, label) and keyed by the player's observation sequence) or an
    explicit `key` (copied trees such as subgames and recovery games).
    """

    def __init__(self, name: str):
        self.name = name
        self._nodes: List[_PendingNode] = []

    def __len__(self) -> int:
        return len(self._nodes)

    def add_root(
        self,
        actor: int,
        *,
        reach: Sequence[float] = (1.0, 1.0, 1.0),
        utility: Sequence[float] = (0.0, 0.0),
        label: Optional[str] = None,
        key: Optional[InfosetKey] = None,
        observations: Optional[Tuple[Optional[str], Optional[str]]] = None,
        source: int = -1,
        history: Optional[str] = None,
    ) -> int:
        self._nodes.append(
            _PendingNode(
                parent=-1,
                action=None,
                action_pos=-1,
                actor=actor,
                chance_prob=1.0,
                utility=(float(utility[0]), float(utility[1])),
                label=label,
                key=key,
                observations=observations,
                reach=(float(reach[0]), float(reach[1]), float(reach[2])),
                source=source,
                history=history,
                children=[],
            )
        )
        return len(self._nodes) - 1

    def add_child(
        self,
        parent: int,
        action: str,
        actor: int,
        *,
        chance_prob: float = 1.0,
        utility: Sequence[float] = (0.0, 0.0),
        label: Optional[str] = None,
        key: Optional[InfosetKey] = None,
        observations: Optional[Tuple[Optional[str], Optional[str]]] = None,
        source: int = -1,
        history: Optional[str] = None,
    ) -> int:
        parent_node = self._nodes[parent]
        self._nodes.append(
            _PendingNode(
                parent=parent,
                action=action,
                action_pos=len(parent_node.children),
                actor=actor,
                chance_prob=float(chance_prob),
                utility=(float(utility[0]), float(utility[1])),
                label=label,
                key=key,
                observations=observations,
                reach=(1.0, 1.0, 1.0),
                source=source,
                history=history,
                children=[],
            )
        )
        index = len(self._nodes) - 1
        parent_node.children.append(index)
        return index

    def build(self) -> GameDefinition:
        nodes = self._nodes
        if not nodes:
            raise GameError(f"Game {self.name} has no nodes")

        roots = [i for i, node in enumerate(nodes) if node.parent < 0]
        order: List[int] = []
        depth_of: Dict[int, int] = {root: 0 for root in roots}
        queue = deque(roots)
        while queue:
            old = queue.popleft()
            order.append(old)
            for child in nodes[old].children:
                depth_of[child] = depth_of[old] + 1
                queue.append(child)
        index = {old: new for new, old in enumerate(order)}
        n = len(order)

        actor = np.array([nodes[old].actor for old in order], dtype=np.int64)
        parent = np.array(
            [index[nodes[old].parent] if nodes[old].parent >= 0 else -1 for old in order],
            dtype=np.int64,
        )
        action_index = np.array([nodes[old].action_pos for old in order], dtype=np.int64)
        depth = np.array([depth_of[old] for old in order], dtype=np.int64)
        chance_prob = np.array(
            [
                nodes[old].chance_prob if nodes[old].parent >= 0 and nodes[nodes[old].parent].actor == CHANCE else 1.0
                for old in order
            ],
            dtype=np.float64,
        )
        utility = np.array([nodes[old].utility for old in order], dtype=np.float64)
        child_count = np.array([len(nodes[old].children) for old in order], dtype=np.int64)
        child_start = np.array(
            [index[nodes[old].children[0]] if nodes[old].children else -1 for old in order],
            dtype=np.int64,
        )
        node_actions = tuple(tuple(nodes[c].action for c in nodes[old].children) for old in order)
        root_reach = np.array([nodes[old].reach for old in order if nodes[old].parent < 0], dtype=np.float64)

        histories: List[str] = []
        for new, old in enumerate(order):
            node = nodes[old]
            if node.history is not None:
                histories.append(node.history)
            elif node.parent < 0:
                histories.append("")
            else:
                base = histories[parent[new]]
                histories.append(f"{base}/{node.action}" if base else node.action)

        levels: List[Tuple[int, int]] = []
        start = 0
        for position in range(1, n + 1):
            if position == n or depth[position] != depth[start]:
                levels.append((start, position))
                start = position

        # Own (label, action) sequences per player, root to node.
        sequences: List[Tuple[Tuple, Tuple]] = []
        for new, old in enumerate(order):
            node = nodes[old]
            if node.parent < 0:
                sequences.append(((), ()))
                continue
            parent_node = nodes[node.parent]
            inherited = sequences[parent[new]]
            if parent_node.actor in PLAYERS:
                tag = parent_node.label if parent_node.label is not None else parent_node.key.observation
                extended = list(inherited)
                extended[parent_node.actor] = inherited[parent_node.actor] + ((tag, node.action),)
                sequences.append((extended[0], extended[1]))
            else:
                sequences.append(inherited)

        groups: Dict[tuple, int] = {}
        infoset_keys: List[InfosetKey] = []
        infoset_players: List[int] = []
        infoset_actions: List[Tuple[str, ...]] = []
        infoset_members: List[List[int]] = []
        infoset = np.full(n, -1, dtype=np.int64)
        labelled = True
        for new, old in enumerate(order):
            node = nodes[old]
            if node.actor not in PLAYERS:
                continue
            if node.key is not None:
                labelled = False
                group = ("key", node.key)
                key = node.key
            elif node.label is not None:
                group = ("label", node.actor, node.label)
                key = InfosetKey(node.actor, sequences[new][node.actor], node.label)
            else:
                raise GameError(f"Decision node {histories[new]!r} in {self.name} has neither label nor key")
            if group not in groups:
                groups[group] = len(infoset_keys)
                infoset_keys.append(key)
                infoset_players.append(node.actor)
                infoset_actions.append(node_actions[new])
                infoset_members.append([])
            infoset[new] = groups[group]
            infoset_members[groups[group]].append(new)

        sizes = np.array([len(actions) for actions in infoset_actions], dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64) if len(sizes) else np.zeros(0, dtype=np.int64)
        slot_infoset = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
        infosets = tuple(
            InfosetInfo(
                index=i,
                player=infoset_players[i],
                key=infoset_keys[i],
                actions=infoset_actions[i],
                slot_offset=int(offsets[i]),
                members=tuple(infoset_members[i]),
            )
            for i in range(len(infoset_keys))
        )
        if len({info.key for info in infosets}) != len(infosets):
            raise GameError(f"Game {self.name} has colliding information-set keys")

        parent_actor = np.where(parent >= 0, actor[np.maximum(parent, 0)], LEAF)
        edge_slot = np.full(n, -1, dtype=np.int64)
        decision_edges = np.nonzero(np.isin(parent_actor, PLAYERS))[0]
        edge_slot[decision_edges] = offsets[infoset[parent[decision_edges]]] + action_index[decision_edges]
        player_edges = tuple(np.nonzero(parent_actor == p)[0] for p in PLAYERS)

        augmented = None
        if labelled:
            augmented_keys = []
            for new, old in enumerate(order):
                node = nodes[old]
                pair = []
                for p in PLAYERS:
                    if node.actor == p:
                        observation = node.label
                    elif node.observations is not None and node.observations[p] is not None:
                        observation = node.observations[p]
                    else:
                        observation = f"@{ACTOR_NAMES[node.actor]}"
                    pair.append(InfosetKey(p, sequences[new][p], observation))
                augmented_keys.append((pair[0], pair[1]))
            augmented = tuple(augmented_keys)

        history_index: Dict[str, int] = {}
        for new, history in enumerate(histories):
            history_index.setdefault(history, new)

        game = GameDefinition(
            name=self.name,
            actor=actor,
            parent=parent,
            action_index=action_index,
            depth=depth,
            chance_prob=chance_prob,
            utility=utility,
            infoset=infoset,
            edge_slot=edge_slot,
            child_start=child_start,
            child_count=child_count,
            root_reach=root_reach,
            levels=tuple(levels),
            histories=tuple(histories),
            node_actions=node_actions,
            infosets=infosets,
            slot_infoset=slot_infoset,
            infoset_offset=offsets,
            infoset_size=sizes,
            infoset_player=np.array(infoset_players, dtype=np.int64),
            infoset_rep=np.array([members[0] for members in infoset_members], dtype=np.int64),
            player_edges=player_edges,
            augmented=augmented,
            source=np.array([nodes[old].source for old in order], dtype=np.int64),
            infoset_index={info.key: info.index for info in infosets},
            history_index=history_index,
        )
        logger.debug(
            f"Built {self.name}: {n} nodes, {len(infosets)} information sets, {len(slot_infoset)} slots"
        )
        return game


def build_tree(rules: GameRules, name: Optional[str] = None) -> GameDefinition:
    """Expand a rules object into a GameDefinition."""
    builder = GameTreeBuilder(name or rules.name)

    def expand(state, parent: int, action: Optional[str], chance_prob: float) -> None:
        actor = rules.actor(state)
        observations = (rules.label(state, PLAYERS[0]), rules.label(state, PLAYERS[1]))
        kwargs = {"observations": observations}
        if actor == LEAF:
            kwargs["utility"] = rules.utility(state)
        elif actor in PLAYERS:
            kwargs["label"] = observations[actor]
        if parent < 0:
            node = builder.add_root(actor, **kwargs)
        else:
            node = builder.add_child(parent, action, actor, chance_prob=chance_prob, **kwargs)
        if actor == LEAF:
            return
        actions = list(rules.actions(state))
        probs = list(rules.chance_probs(state)) if actor == CHANCE else [1.0] * len(actions)
        for child_action, prob in zip(actions, probs):
            expand(rules.next_state(state, child_action), node, child_action, prob)

    expand(rules.initial_state(), -1, None, 1.0)
    return builder.build()
