# app/games/rules/leduc.py
"""
Leduc Hold'em.

Six cards (two suits of J, Q, K), ante 1, one private card each and one
public card dealt before the second betting round. Each round allows at
most one bet and one raise; bets are 2 chips in round one and 4 in round
two. A pair with the board wins, otherwise the higher rank wins, equal ranks
split the pot.

With `abstract=True` the players' observations are coarsened: suits are
dropped, a player holding a Jack cannot tell a Queen board from a King
board, and a player holding a King cannot tell a Jack board from a Queen
board. The betting tree is unchanged.
"""
from typing import NamedTuple, Optional, Sequence, Tuple

from app.games.base import CHANCE, LEAF, PLAYER1, PLAYER2, GameRules

DECK = ("Js", "Jh", "Qs", "Qh", "Ks", "Kh")
RANKS = ("J", "Q", "K")
BET_SIZES = (2.0, 4.0)
ANTE = 1.0

ROUND_DONE = ("kk", "bc", "kbc", "brc", "kbrc")

# Board ranks a holder of the given rank cannot tell apart in the abstraction.
MERGED_BOARDS = {"J": {"Q": "QK", "K": "QK"}, "K": {"J": "JQ", "Q": "JQ"}}


class LeducState(NamedTuple):
    hands: Tuple[str, ...]
    round1: str
    board: Optional[str]
    round2: str


def rank(card: str) -> str:
    return card[0]


def round_actions(betting: str) -> Sequence[str]:
    if betting in ("", "k"):
        return ["k", "b"]
    if betting in ("b", "kb"):
        return ["f", "c", "r"]
    return ["f", "c"]


def round_commitments(betting: str, bet: float) -> Tuple[float, float]:
    """Chips each player puts in during one betting round."""
    committed = [0.0, 0.0]
    for position, action in enumerate(betting):
        mover = position % 2
        other = 1 - mover
        if action == "b":
            committed[mover] = bet
        elif action == "r":
            committed[mover] = committed[other] + bet
        elif action == "c":
            committed[mover] = committed[other]
    return committed[0], committed[1]


class LeducRules(GameRules):
    def __init__(self, abstract: bool = False):
        self.abstract = abstract
        self.name = "leduc-abstract" if abstract else "leduc"

    def initial_state(self) -> LeducState:
        return LeducState((), "", None, "")

    def _betting(self, state: LeducState) -> str:
        return state.round1 if state.board is None else state.round2

    def actor(self, state: LeducState) -> int:
        if len(state.hands) < 2:
            return CHANCE
        if state.round1.endswith("f") or state.round2.endswith("f"):
            return LEAF
        if state.board is None:
            if state.round1 in ROUND_DONE:
                return CHANCE
        elif state.round2 in ROUND_DONE:
            return LEAF
        return PLAYER1 if len(self._betting(state)) % 2 == 0 else PLAYER2

    def actions(self, state: LeducState) -> Sequence[str]:
        if self.actor(state) == CHANCE:
            dealt = set(state.hands)
            return [card for card in DECK if card not in dealt]
        return round_actions(self._betting(state))

    def next_state(self, state: LeducState, action: str) -> LeducState:
        if len(state.hands) < 2:
            return state._replace(hands=state.hands + (action,))
        if state.board is None:
            if state.round1 in ROUND_DONE:
                return state._replace(board=action)
            return state._replace(round1=state.round1 + action)
        return state._replace(round2=state.round2 + action)

    def contributions(self, state: LeducState) -> Tuple[float, float]:
        first = round_commitments(state.round1, BET_SIZES[0])
        second = round_commitments(state.round2, BET_SIZES[1])
        return ANTE + first[0] + second[0], ANTE + first[1] + second[1]

    def utility(self, state: LeducState) -> Tuple[float, float]:
        paid = self.contributions(state)
        betting = self._betting(state)
        if betting.endswith("f"):
            folder = (len(betting) - 1) % 2
            if folder == PLAYER1:
                return -paid[0], paid[0]
            return paid[1], -paid[1]
        strength = [self._strength(state.hands[p], state.board) for p in (PLAYER1, PLAYER2)]
        if strength[0] > strength[1]:
            return paid[1], -paid[1]
        if strength[0] < strength[1]:
            return -paid[0], paid[0]
        return 0.0, 0.0

    @staticmethod
    def _strength(card: str, board: str) -> int:
        value = RANKS.index(rank(card))
        return 10 + value if rank(card) == rank(board) else value

    def _card_view(self, card: str) -> str:
        return rank(card) if self.abstract else card

    def _board_view(self, card: str, board: str) -> str:
        if not self.abstract:
            return board
        return MERGED_BOARDS.get(rank(card), {}).get(rank(board), rank(board))

    def label(self, state: LeducState, player: int) -> Optional[str]:
        if len(state.hands) <= player:
            return "-"
        card = state.hands[player]
        view = f"{self._card_view(card)}.{state.round1}"
        if state.board is not None:
            view = f"{view}.{self._board_view(card, state.board)}.{state.round2}"
        return view
