"""
Matrix games and their structural derivations
Efficiency, punishment/benefit accounting, projection and transposition
"""
import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Tuple

import numpy as np

from games.errors import BoundsError, ConfigError

logger = logging.getLogger(__name__)


class JointAction(NamedTuple):
    """A joint action (i, j); indices are 0-based, reports print them 1-based"""
    i: int
    j: int

    @classmethod
    def from_one_based(cls, i: int, j: int) -> 'JointAction':
        return cls(i - 1, j - 1)

    def one_based(self) -> Tuple[int, int]:
        return self.i + 1, self.j + 1


def _frozen_matrix(values, name: str) -> np.ndarray:
    matrix = np.array(values, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise ConfigError(f'{name} must be a non-empty 2D matrix, got shape {matrix.shape}')
    if not np.all(np.isfinite(matrix)):
        raise ConfigError(f'{name} contains NaN or infinite values')
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class MatrixGame:
    """Two-person game: p1[i, j] and p2[i, j] are the players' payoffs at (i, j)"""
    p1: np.ndarray
    p2: np.ndarray

    def __post_init__(self):
        p1 = _frozen_matrix(self.p1, 'p1')
        p2 = _frozen_matrix(self.p2, 'p2')
        if p1.shape != p2.shape:
            raise ConfigError(f'payoff matrices differ in shape: {p1.shape} vs {p2.shape}')
        object.__setattr__(self, 'p1', p1)
        object.__setattr__(self, 'p2', p2)

    @classmethod
    def from_pairs(cls, cells: Sequence[Sequence[Sequence[float]]]) -> 'MatrixGame':
        """Build from a nested list of rows, each a list of (p1, p2) pairs"""
        array = np.array(cells, dtype=float)
        if array.ndim != 3 or array.shape[2] != 2:
            raise ConfigError('expected rows of (p1, p2) pairs')
        return cls(array[:, :, 0], array[:, :, 1])

    @property
    def rows(self) -> int:
        return self.p1.shape[0]

    @property
    def cols(self) -> int:
        return self.p1.shape[1]

    def check(self, a: JointAction) -> JointAction:
        i, j = a
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise BoundsError(f'joint action {tuple(a)} outside a {self.rows}x{self.cols} game')
        return JointAction(int(i), int(j))

    def joint_actions(self) -> Iterable[JointAction]:
        for i in range(self.rows):
            for j in range(self.cols):
                yield JointAction(i, j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGame):
            return NotImplemented
        return np.array_equal(self.p1, other.p1) and np.array_equal(self.p2, other.p2)

    def __hash__(self) -> int:
        return hash((self.p1.tobytes(), self.p2.tobytes(), self.p1.shape))


@dataclass(frozen=True, eq=False)
class ZeroSumGame:
    """Zero-sum game; payoffs[i, j] goes to player 1, player 2 receives its negation"""
    payoffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'payoffs', _frozen_matrix(self.payoffs, 'payoffs'))

    @property
    def rows(self) -> int:
        return self.payoffs.shape[0]

    @property
    def cols(self) -> int:
        return self.payoffs.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZeroSumGame):
            return NotImplemented
        return np.array_equal(self.payoffs, other.payoffs)

    def __hash__(self) -> int:
        return hash((self.payoffs.tobytes(), self.payoffs.shape))


def payoff(game: MatrixGame, a: JointAction) -> Tuple[float, float]:
    """Payoff pair (P1, P2) at joint action a"""
    i, j = game.check(a)
    return float(game.p1[i, j]), float(game.p2[i, j])


def efficient_solutions(game: MatrixGame) -> Tuple[JointAction, ...]:
    """All joint actions maximizing P1 + P2, in lexicographic order (never empty)"""
    total = game.p1 + game.p2
    best = total.max()
    # exact comparison; ties are all returned
    return tuple(JointAction(int(i), int(j)) for i, j in zip(*np.nonzero(total == best)))


def punishment_benefit(game: MatrixGame, s_ref: JointAction, s_played: JointAction, player: int) -> float:
    """
    Punishment of `player` w.r.t. s_ref when s_played is played instead.
    Positive is a punishment (loss), negative a benefit (gain).
    """
    if player not in (1, 2):
        raise BoundsError(f'player must be 1 or 2, got {player}')
    ref = payoff(game, s_ref)
    played = payoff(game, s_played)
    return ref[player - 1] - played[player - 1]


def project(game: MatrixGame) -> ZeroSumGame:
    """Zero-sum game whose player-1 payoff is the negated player-2 payoff of game"""
    return ZeroSumGame(-game.p2)


def transpose(game: MatrixGame) -> MatrixGame:
    """Swap the players' roles: result (j, i) pays (P2(i, j), P1(i, j))"""
    return MatrixGame(game.p2.T.copy(), game.p1.T.copy())


def best_responses(game: MatrixGame, player: int, opponent_action: int) -> Tuple[int, ...]:
    """A player's payoff-maximizing replies to a fixed opponent action"""
    if player == 1:
        if not 0 <= opponent_action < game.cols:
            raise BoundsError(f'column {opponent_action} outside game with {game.cols} columns')
        column = game.p1[:, opponent_action]
        return tuple(int(i) for i in np.flatnonzero(column == column.max()))
    if player == 2:
        if not 0 <= opponent_action < game.rows:
            raise BoundsError(f'row {opponent_action} outside game with {game.rows} rows')
        row = game.p2[opponent_action, :]
        return tuple(int(j) for j in np.flatnonzero(row == row.max()))
    raise BoundsError(f'player must be 1 or 2, got {player}')


def validate_k_person(payoffs) -> Tuple[bool, str]:
    """
    Check a k-person game given as an array of shape (n_1, ..., n_k, k).
    Every joint action needs one finite payoff per player. No computation in
    this project uses k > 2; the check documents the general form only.
    """
    try:
        array = np.asarray(payoffs, dtype=float)
    except (TypeError, ValueError) as e:
        return False, f'Invalid payoff array: {str(e)}'
    if array.ndim < 2:
        return False, 'Payoff array needs at least one action axis and a player axis'
    k = array.ndim - 1
    if array.shape[-1] != k:
        return False, f'Expected {k} payoffs per joint action, got {array.shape[-1]}'
    if any(n < 1 for n in array.shape[:-1]):
        return False, 'Every player needs at least one action'
    if not np.all(np.isfinite(array)):
        return False, 'Payoffs contain NaN or infinite values'
    return True, ''
