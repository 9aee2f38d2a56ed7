# app/utils/formatters.py
"""
Text formats for strategies, counterfactual values and result CSVs.

Strategy lines:  `<player> <infoset-key> <action>=<prob> ...`
Cfv lines:       `<player> <infoset-key> <cfv>`
Keys:            `<label>:<action>|...|<observation>`
Numbers are printed with 17 significant digits so files load back exactly;
lines are sorted by key.
"""
import csv
import logging
import os
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from app.games.base import PLAYERS, StrategyError, player_from_number, player_number
from app.games.profile import StrategyProfile
from app.games.tree import GameDefinition
from app.games.types import InfosetKey
from app.solvers.values import CfvVector

logger = logging.getLogger(__name__)

TRACE_HEADER = ["iteration", "exploitability_chips", "elapsed_seconds"]
CFRD_TRACE_HEADER = ["iteration", "subgame_iters", "exploitability_chips", "elapsed_seconds"]
COMPARISON_HEADER = ["iterations", "safe_expl", "unsafe_expl", "safe_vs_orig", "unsafe_vs_orig"]


def format_number(value: float) -> str:
    return f"{value:.17g}"


def _sort_key(player: int, key: InfosetKey):
    return str(key), player


def format_strategy_lines(
    profile: StrategyProfile,
    keys: Optional[Iterable[InfosetKey]] = None,
) -> List[str]:
    """One line per information set, restricted to `keys` when given."""
    game = profile.game
    selected = [game.infoset_of(key) for key in keys] if keys is not None else list(game.infosets)
    lines = []
    for info in sorted(selected, key=lambda info: _sort_key(info.player, info.key)):
        pairs = " ".join(
            f"{action}={format_number(profile.probs[slot])}" for action, slot in zip(info.actions, info.slots)
        )
        lines.append(f"{player_number(info.player)} {info.key} {pairs}")
    return lines


def write_strategy(
    profile: StrategyProfile,
    path: str,
    keys: Optional[Iterable[InfosetKey]] = None,
) -> str:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        for line in format_strategy_lines(profile, keys):
            f.write(line + "\n")
    logger.info(f"Wrote strategy to {path}")
    return path


def parse_strategy_lines(lines: Iterable[str]) -> Dict[InfosetKey, Dict[str, float]]:
    mapping: Dict[InfosetKey, Dict[str, float]] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 3:
            raise StrategyError(f"Line {number}: expected '<player> <key> <action>=<prob> ...'")
        try:
            player = player_from_number(int(parts[0]))
            distribution = {}
            for token in parts[2:]:
                action, sep, prob = token.rpartition("=")
                if not sep:
                    raise ValueError(token)
                distribution[action] = float(prob)
        except ValueError as e:
            raise StrategyError(f"Line {number}: malformed entry ({e})")
        mapping[InfosetKey.parse(player, parts[1])] = distribution
    return mapping


def read_strategy(game: GameDefinition, path: str, strict: bool = False) -> StrategyProfile:
    """
    Load a strategy file for `game`. Information sets missing from the file
    play uniformly unless `strict` is set.
    """
    with open(path, "r", encoding="utf-8") as f:
        mapping = parse_strategy_lines(f)
    profile = StrategyProfile.from_mapping(game, mapping, strict=strict)
    profile.validate()
    return profile


def format_cfv_lines(cfvs: Mapping[int, CfvVector]) -> List[str]:
    entries = [
        (player, key, value)
        for player in PLAYERS
        if player in cfvs
        for key, value in cfvs[player].values.items()
    ]
    entries.sort(key=lambda entry: _sort_key(entry[0], entry[1]))
    return [f"{player_number(player)} {key} {format_number(value)}" for player, key, value in entries]


def write_cfvs(cfvs: Mapping[int, CfvVector], path: str) -> str:
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        for line in format_cfv_lines(cfvs):
            f.write(line + "\n")
    logger.info(f"Wrote counterfactual values to {path}")
    return path


def read_cfvs(path: str) -> Dict[int, CfvVector]:
    cfvs = {player: CfvVector(player=player) for player in PLAYERS}
    with open(path, "r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise StrategyError(f"{path}:{number}: expected '<player> <key> <cfv>'")
            try:
                player = player_from_number(int(parts[0]))
                value = float(parts[2])
            except ValueError as e:
                raise StrategyError(f"{path}:{number}: malformed entry ({e})")
            cfvs[player].values[InfosetKey.parse(player, parts[1])] = value
    return cfvs


def write_csv(
    path: str,
    header: Sequence[str],
    rows: Iterable[Sequence],
    footer: Optional[Sequence[str]] = None,
) -> str:
    """Write a results CSV; `footer` lines are appended as `#` comments."""
    _ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) if isinstance(v, float) else v for v in row])
        for line in footer or []:
            f.write(f"# {line}\n")
    logger.info(f"Wrote {path}")
    return path


def read_csv(path: str) -> List[Dict[str, str]]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
