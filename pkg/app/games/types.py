from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from app.games.base import StrategyError

SEGMENT_SEPARATOR = "|"
ACTION_SEPARATOR = ":"


@dataclass(frozen=True, order=True)
class InfosetKey:
    """
    Identifies an (augmented) information set of one player.

    `sequence` holds the player's earlier (information set label, action)
    pairs on the path; `observation` is what the player sees now. On the
    player's own turn the observation is the standard information-set label.
    """

    player: int
    sequence: Tuple[Tuple[str, str], ...]
    observation: str

    def __str__(self) -> str:
        """`label:action` segments in path order, then the observation, joined by `|` (e.g. `J:k|J.k`)."""
        segments = [f"{label}{ACTION_SEPARATOR}{action}" for label, action in self.sequence]
        segments.append(self.observation)
        return SEGMENT_SEPARATOR.join(segments)

    @classmethod
    def parse(cls, player: int, text: str) -> "InfosetKey":
        parts = text.split(SEGMENT_SEPARATOR)
        sequence = []
        for part in parts[:-1]:
            label, sep, action = part.rpartition(ACTION_SEPARATOR)
            if not sep:
                raise StrategyError(f"Malformed information-set key segment: {part!r}")
            sequence.append((label, action))
        return cls(player=player, sequence=tuple(sequence), observation=parts[-1])

    def with_suffix(self, suffix: str) -> "InfosetKey":
        return InfosetKey(self.player, self.sequence, f"{self.observation}{suffix}")


@dataclass(frozen=True)
class InfosetInfo:
    """A standard information set of a built game."""

    index: int
    player: int
    key: InfosetKey
    actions: Tuple[str, ...]
    slot_offset: int
    members: Tuple[int, ...]

    @property
    def slots(self) -> range:
        return range(self.slot_offset, self.slot_offset + len(self.actions))


@dataclass(frozen=True)
class ReachProbabilities:
    """Reach contributions of each player and chance for one history."""

    pi_player1: float
    pi_player2: float
    pi_chance: float

    @property
    def joint(self) -> float:
        return self.pi_player1 * self.pi_player2 * self.pi_chance

    def without(self, player: int) -> float:
        """pi_{-player}: every contribution except `player`'s."""
        if player == 0:
            return self.pi_player2 * self.pi_chance
        return self.pi_player1 * self.pi_chance


@dataclass
class Violation:
    kind: str
    message: str
    histories: Tuple[str, ...] = ()


@dataclass
class Diagnostics:
    """Result of validating a game."""

    game: str
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def summary(self) -> str:
        if self.ok:
            return f"{self.game}: ok"
        return f"{self.game}: {len(self.violations)} violation(s); first: {self.first.message}"
