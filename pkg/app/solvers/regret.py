# app/solvers/regret.py
import numpy as np

from app.games.profile import normalize_slots
from app.games.tree import GameDefinition


def regret_matching(regrets) -> np.ndarray:
    """
    Distribution proportional to the positive regrets; uniform when no
    regret is positive.
    """
    regrets = np.asarray(regrets, dtype=np.float64)
    if regrets.size == 0:
        raise ValueError("regret_matching needs at least one action")
    positive = np.maximum(regrets, 0.0)
    total = positive.sum()
    if total > 0:
        return positive / total
    return np.full(regrets.size, 1.0 / regrets.size)


def regret_matching_slots(game: GameDefinition, regrets: np.ndarray) -> np.ndarray:
    """regret_matching applied to every information set of `game` at once."""
    return normalize_slots(game, np.maximum(regrets, 0.0))
