# app/solvers/accumulators.py
"""
Regret and average-strategy accumulators, plus a registry that records how
many accumulator entries are alive at any moment.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from app.games.profile import StrategyProfile, normalize_slots
from app.games.tree import GameDefinition
from app.games.types import InfosetKey

logger = logging.getLogger(__name__)


class AccumulatorTable:
    """
    Cumulative regret and cumulative reach-weighted strategy per
    (information set, action) of one game.
    """

    def __init__(self, game: GameDefinition, label: Optional[str] = None):
        self.game = game
        self.label = label or game.name
        self.regret = np.zeros(game.num_slots)
        self.strategy_weight = np.zeros(game.num_slots)
        self.iterations = 0

    @property
    def entries(self) -> int:
        return self.game.num_slots

    def keys(self) -> Iterator[Tuple[InfosetKey, str]]:
        for info in self.game.infosets:
            for action in info.actions:
                yield info.key, action

    def infoset_keys(self) -> Set[InfosetKey]:
        return {info.key for info in self.game.infosets}

    def entry(self, key: InfosetKey, action: str) -> Tuple[float, float]:
        info = self.game.infoset_of(key)
        slot = info.slot_offset + info.actions.index(action)
        return float(self.regret[slot]), float(self.strategy_weight[slot])

    def average_probs(self) -> np.ndarray:
        return normalize_slots(self.game, self.strategy_weight)

    def average_profile(self) -> StrategyProfile:
        return StrategyProfile(self.game, self.average_probs())

    def snapshot(self) -> "AccumulatorTable":
        copy = AccumulatorTable(self.game, self.label)
        copy.regret = self.regret.copy()
        copy.strategy_weight = self.strategy_weight.copy()
        copy.iterations = self.iterations
        return copy


@dataclass
class RegistryEvent:
    label: str
    persistent: bool
    entries: int
    live_entries: int


@dataclass
class AccumulatorRegistry:
    """
    Tracks live accumulator tables.

    Persistent tables live for a whole solve; transient ones are released as
    soon as their subgame has been solved. `peak_entries` is the largest
    number of entries alive at once.
    """

    live: Dict[int, Tuple[AccumulatorTable, bool]] = field(default_factory=dict)
    peak_entries: int = 0
    events: List[RegistryEvent] = field(default_factory=list)

    def register(self, table: AccumulatorTable, persistent: bool) -> AccumulatorTable:
        self.live[id(table)] = (table, persistent)
        live_entries = self.live_entries
        self.peak_entries = max(self.peak_entries, live_entries)
        self.events.append(RegistryEvent(table.label, persistent, table.entries, live_entries))
        return table

    def release(self, table: AccumulatorTable) -> None:
        self.live.pop(id(table), None)

    @property
    def live_entries(self) -> int:
        return sum(table.entries for table, _ in self.live.values())

    def persistent_tables(self) -> List[AccumulatorTable]:
        return [table for table, persistent in self.live.values() if persistent]

    def persistent_keys(self) -> Set[InfosetKey]:
        keys: Set[InfosetKey] = set()
        for table in self.persistent_tables():
            keys |= table.infoset_keys()
        return keys

    @property
    def persistent_entries(self) -> int:
        return sum(table.entries for table in self.persistent_tables())

    def max_transient_entries(self) -> int:
        transient = [event.entries for event in self.events if not event.persistent]
        return max(transient, default=0)
