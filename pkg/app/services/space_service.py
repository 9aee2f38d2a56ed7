"""Storage accounting for CFR, CFR with run-time recovery, and CFR-D"""
import logging
from dataclasses import dataclass
from typing import List

from app.decomposition import SubgamePartition, subgame_forest, trunk_game
from app.games.base import PLAYERS, opponent
from app.games.tree import GameDefinition

logger = logging.getLogger(__name__)

BYTES_PER_FLOAT = 8
SPACE_HEADER = ["method", "solving_entries", "solving_bytes", "using_entries", "using_bytes"]


@dataclass
class SpaceRow:
    method: str
    solving_entries: int
    using_entries: int

    @property
    def solving_bytes(self) -> int:
        return self.solving_entries * BYTES_PER_FLOAT

    @property
    def using_bytes(self) -> int:
        return self.using_entries * BYTES_PER_FLOAT

    def as_row(self) -> tuple:
        return self.method, self.solving_entries, self.solving_bytes, self.using_entries, self.using_bytes


class SpaceService:
    """
    Float counts for finding and for using a strategy.

    Solving with CFR stores a regret and a strategy sum per action; using a
    strategy stores one probability per action. Recovering at run time keeps
    the trunk strategy, one value per root information set, and the largest
    recovery game being solved.
    """

    def __init__(self, game: GameDefinition, partition: SubgamePartition):
        self.game = game
        self.partition = partition

    def subgame_slots(self) -> List[int]:
        return [subgame_forest(self.partition, index).num_slots for index in range(len(self.partition.subgames))]

    def recovery_slots(self) -> int:
        """Slots of the largest recovery game: the subgame plus a T/F choice per chooser root."""
        largest = 0
        for index, slots in enumerate(self.subgame_slots()):
            subgame = self.partition.subgame(index)
            for player in PLAYERS:
                chooser_roots = len(subgame.root_infosets[opponent(player)])
                largest = max(largest, slots + 2 * chooser_roots)
        return largest

    def rows(self) -> List[SpaceRow]:
        full = self.game.num_slots
        trunk = trunk_game(self.partition).game.num_slots
        roots = self.partition.root_infoset_count()
        subgame = max(self.subgame_slots(), default=0)
        using_recovered = trunk + roots + 2 * self.recovery_slots()
        return [
            SpaceRow("cfr", 2 * full, full),
            SpaceRow("cfr+recovery", 2 * full, using_recovered),
            SpaceRow("cfr-d", 2 * trunk + roots + 2 * subgame, using_recovered),
        ]

    def report(self) -> List[tuple]:
        """CSV rows in SPACE_HEADER order"""
        rows = self.rows()
        for row in rows:
            logger.info(
                f"{row.method}: solving {row.solving_bytes} bytes, using {row.using_bytes} bytes"
            )
        return [row.as_row() for row in rows]
