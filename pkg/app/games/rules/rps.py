# app/games/rules/rps.py
"""
Rock-paper-scissors in sequential form: player1 moves, then player2 moves
without seeing player1's choice.
"""
from typing import Optional, Sequence, Tuple

from app.games.base import LEAF, PLAYER1, PLAYER2, GameRules

MOVES = ("R", "P", "S")
BEATS = {"R": "S", "P": "R", "S": "P"}


class RockPaperScissorsRules(GameRules):
    name = "rps"

    def initial_state(self) -> str:
        return ""

    def actor(self, state: str) -> int:
        return (PLAYER1, PLAYER2, LEAF)[len(state)]

    def actions(self, state: str) -> Sequence[str]:
        return MOVES

    def next_state(self, state: str, action: str) -> str:
        return state + action

    def utility(self, state: str) -> Tuple[float, float]:
        first, second = state
        if first == second:
            return 0.0, 0.0
        if BEATS[first] == second:
            return 1.0, -1.0
        return -1.0, 1.0

    def label(self, state: str, player: int) -> Optional[str]:
        if player == PLAYER1 and len(state) == 0:
            return "P1"
        if player == PLAYER2 and len(state) == 1:
            return "P2"
        return None
