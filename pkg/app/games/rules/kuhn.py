# app/games/rules/kuhn.py
"""
Kuhn poker: three cards, one card each, ante 1, a single betting round with
bet size 1. Actions are k (check), b (bet), f (fold) and c (call).
"""
from typing import NamedTuple, Optional, Sequence, Tuple

from app.games.base import CHANCE, LEAF, PLAYER1, PLAYER2, GameRules

CARDS = ("J", "Q", "K")
TERMINAL = ("kk", "bf", "bc", "kbf", "kbc")


class KuhnState(NamedTuple):
    cards: Tuple[str, ...]
    betting: str


class KuhnRules(GameRules):
    name = "kuhn"

    def initial_state(self) -> KuhnState:
        return KuhnState((), "")

    def actor(self, state: KuhnState) -> int:
        if len(state.cards) < 2:
            return CHANCE
        if state.betting in TERMINAL:
            return LEAF
        return PLAYER1 if len(state.betting) % 2 == 0 else PLAYER2

    def actions(self, state: KuhnState) -> Sequence[str]:
        if len(state.cards) < 2:
            return [card for card in CARDS if card not in state.cards]
        if state.betting.endswith("b"):
            return ["f", "c"]
        return ["k", "b"]

    def next_state(self, state: KuhnState, action: str) -> KuhnState:
        if len(state.cards) < 2:
            return KuhnState(state.cards + (action,), state.betting)
        return KuhnState(state.cards, state.betting + action)

    def utility(self, state: KuhnState) -> Tuple[float, float]:
        betting = state.betting
        if betting.endswith("f"):
            folder = (len(betting) - 1) % 2
            return (-1.0, 1.0) if folder == PLAYER1 else (1.0, -1.0)
        stake = 2.0 if betting.endswith("c") else 1.0
        if CARDS.index(state.cards[0]) > CARDS.index(state.cards[1]):
            return stake, -stake
        return -stake, stake

    def label(self, state: KuhnState, player: int) -> Optional[str]:
        if len(state.cards) <= player:
            return "-"
        return f"{state.cards[player]}.{state.betting}" if state.betting else state.cards[player]
