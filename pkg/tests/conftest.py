# tests/conftest.py
import itertools
import sys
from pathlib import Path

import numpy as np
import pytest
from dotenv import load_dotenv
from scipy.optimize import linprog

# Load test environment variables
load_dotenv(".env.test", override=True)

# Add project root to Python path
project_root = Path(__file__).parent.parent.absolute()
sys.path.insert(0, str(project_root))

from app.games import CHANCE, LEAF, PLAYER1, PLAYER2, PLAYERS, build_game
from app.games.profile import StrategyProfile

SEED = 20140115


@pytest.fixture(scope="session")
def rps_game():
    return build_game("rps")


@pytest.fixture(scope="session")
def kuhn_game():
    return build_game("kuhn")


@pytest.fixture(scope="session")
def leduc_game():
    return build_game("leduc")


@pytest.fixture(scope="session")
def leduc_abstract_game():
    return build_game("leduc-abstract")


@pytest.fixture(scope="function")
def rng():
    """Seeded generator; every test gets the same stream."""
    return np.random.default_rng(SEED)


@pytest.fixture(scope="function")
def output_dir(tmp_path):
    out = tmp_path / "results"
    out.mkdir()
    return out


class BruteForceOracle:
    """
    Reference answers computed by plain recursion over the history tree,
    without the level-by-level passes the solvers use.
    """

    @staticmethod
    def value(game, probs, node=None):
        """Player1 expected utility below `node` (summed over roots when None)."""
        if node is None:
            return sum(
                float(np.prod(game.root_reach[position])) * BruteForceOracle.value(game, probs, int(root))
                for position, root in enumerate(game.roots)
            )
        actor = int(game.actor[node])
        if actor == LEAF:
            return float(game.utility[node, 0])
        total = 0.0
        for position, child in enumerate(game.children(node)):
            if actor == CHANCE:
                weight = float(game.chance_prob[child])
            else:
                info = game.infosets[game.infoset[node]]
                weight = float(probs[info.slot_offset + position])
            if weight:
                total += weight * BruteForceOracle.value(game, probs, child)
        return total

    @staticmethod
    def path_reach(game, probs, node):
        """(player1, player2, chance) reach of `node`, multiplied out along its path."""
        path = game.path(node)
        reach = np.array(game.root_reach[path[0] - game.levels[0][0]], dtype=np.float64)
        for child in path[1:]:
            parent = int(game.parent[child])
            actor = int(game.actor[parent])
            if actor == CHANCE:
                reach[CHANCE] *= float(game.chance_prob[child])
            else:
                info = game.infosets[game.infoset[parent]]
                reach[actor] *= float(probs[info.slot_offset + int(game.action_index[child])])
        return reach

    @staticmethod
    def pure_strategies(game, player):
        infosets = game.infosets_of(player)
        for choice in itertools.product(*[range(len(info.actions)) for info in infosets]):
            yield {info.index: position for info, position in zip(infosets, choice)}

    @staticmethod
    def best_response_value(game, profile, player):
        """Best pure-strategy value of `player` against `profile`, by enumeration."""
        base = profile.probs if isinstance(profile, StrategyProfile) else profile
        best = -np.inf
        for pure in BruteForceOracle.pure_strategies(game, player):
            probs = base.copy()
            for index, position in pure.items():
                info = game.infosets[index]
                probs[info.slot_offset : info.slot_offset + len(info.actions)] = 0.0
                probs[info.slot_offset + position] = 1.0
            value = BruteForceOracle.value(game, probs)
            best = max(best, value if player == PLAYER1 else -value)
        return best

    @staticmethod
    def exploitability(game, profile):
        return (
            BruteForceOracle.best_response_value(game, profile, PLAYER1)
            + BruteForceOracle.best_response_value(game, profile, PLAYER2)
        ) / 2.0

    @staticmethod
    def sequence_form_value(game):
        """Game value for player1 from the sequence-form linear program."""
        sequences = {player: 1 + game.num_slots for player in PLAYERS}
        payoff = np.zeros((sequences[PLAYER1], sequences[PLAYER2]))
        parent_sequence = {}

        def walk(node, seq, chance):
            actor = int(game.actor[node])
            if actor == LEAF:
                payoff[seq[0], seq[1]] += chance * game.utility[node, 0]
                return
            if actor in PLAYERS:
                parent_sequence[int(game.infoset[node])] = seq[actor]
            for position, child in enumerate(game.children(node)):
                if actor == CHANCE:
                    walk(child, seq, chance * game.chance_prob[child])
                else:
                    slot = game.infosets[game.infoset[node]].slot_offset + position
                    extended = list(seq)
                    extended[actor] = 1 + slot
                    walk(child, tuple(extended), chance)

        for root in game.roots:
            walk(int(root), (0, 0), 1.0)

        def constraints(player):
            infosets = game.infosets_of(player)
            matrix = np.zeros((1 + len(infosets), sequences[player]))
            matrix[0, 0] = 1.0
            for row, info in enumerate(infosets, start=1):
                matrix[row, [1 + slot for slot in info.slots]] = 1.0
                matrix[row, parent_sequence[info.index]] = -1.0
            rhs = np.zeros(1 + len(infosets))
            rhs[0] = 1.0
            return matrix, rhs

        E, e = constraints(PLAYER1)
        F, f = constraints(PLAYER2)
        n_x, n_q = E.shape[1], F.shape[0]
        # maximize f.q subject to F^T q <= A^T x, E x = e, x >= 0
        c = np.concatenate([np.zeros(n_x), -f])
        A_ub = np.hstack([-payoff.T, F.T])
        b_ub = np.zeros(F.shape[1])
        A_eq = np.hstack([E, np.zeros((E.shape[0], n_q))])
        bounds = [(0, None)] * n_x + [(None, None)] * n_q
        result = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=e, bounds=bounds, method="highs")
        assert result.success, result.message
        return -result.fun


@pytest.fixture(scope="session")
def oracle():
    return BruteForceOracle

