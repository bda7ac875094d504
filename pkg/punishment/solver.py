"""
Zero-sum matrix game solver
Minimax strategies for both players via two linear programs (HiGHS)
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from games.core import ZeroSumGame
from games.errors import DomainError, PcmasError

logger = logging.getLogger(__name__)

PURE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MixedStrategy:
    """Probabilities over one player's actions"""
    probs: Tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probs)
        if not probs:
            raise DomainError('a mixed strategy needs at least one action')
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise DomainError(f'probabilities must lie in [0, 1]: {probs}')
        if abs(sum(probs) - 1.0) > 1e-9:
            raise DomainError(f'probabilities must sum to 1, got {sum(probs)}')
        object.__setattr__(self, 'probs', probs)

    @classmethod
    def pure(cls, action: int, n_actions: int) -> 'MixedStrategy':
        probs = [0.0] * n_actions
        probs[action] = 1.0
        return cls(tuple(probs))

    def as_array(self) -> np.ndarray:
        return np.array(self.probs)

    @property
    def pure_action(self) -> Optional[int]:
        """The action played with probability 1, or None for a proper mixture"""
        for action, p in enumerate(self.probs):
            if p == 1.0:
                return action
        return None

    def sample_with(self, u: float) -> int:
        """Action selected by a uniform draw u in [0, 1)"""
        total = 0.0
        for action, p in enumerate(self.probs):
            total += p
            if u < total:
                return action
        return max(a for a, p in enumerate(self.probs) if p > 0.0)

    def sample(self, rng: np.random.Generator) -> int:
        """Draw an action with one uniform draw"""
        return self.sample_with(rng.random())


@dataclass(frozen=True)
class ZeroSumSolution:
    value: float
    strat1: MixedStrategy
    strat2: MixedStrategy


def _clean(probs: np.ndarray) -> MixedStrategy:
    probs = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    probs = probs / probs.sum()
    top = int(np.argmax(probs))
    if probs[top] > 1.0 - PURE_TOLERANCE:
        return MixedStrategy.pure(top, len(probs))
    probs[probs < PURE_TOLERANCE] = 0.0
    return MixedStrategy(tuple(probs / probs.sum()))


def _maximin(matrix: np.ndarray) -> Tuple[np.ndarray, float]:
    """Row player's optimal mixture for maximizing its guaranteed payoff"""
    rows, cols = matrix.shape
    c = np.zeros(rows + 1)
    c[-1] = -1.0  # maximize v
    # v - sum_i x_i A[i, j] <= 0 for every column j
    a_ub = np.hstack([-matrix.T, np.ones((cols, 1))])
    b_ub = np.zeros(cols)
    a_eq = np.hstack([np.ones((1, rows)), np.zeros((1, 1))])
    bounds = [(0, None)] * rows + [(None, None)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=[1.0], bounds=bounds, method='highs')
    if res.status != 0:
        logger.error(f"Linear program failed: {res.message}")
        raise PcmasError(f'zero-sum solve failed: {res.message}')
    return res.x[:rows], float(res.x[-1])


def solve_zero_sum(zsg: ZeroSumGame) -> ZeroSumSolution:
    """
    Minimax solution of a zero-sum game.
    value is player 1's guaranteed payoff; strat1 guarantees at least value,
    strat2 holds player 1 to at most value.
    """
    matrix = zsg.payoffs
    x, value = _maximin(matrix)
    # column player minimizes player 1's payoff: maximin of the negated transpose
    y, _ = _maximin(-matrix.T)
    strat1, strat2 = _clean(x), _clean(y)

    lower = float(np.min(strat1.as_array() @ matrix))
    upper = float(np.max(matrix @ strat2.as_array()))
    if strat1.pure_action is not None:
        value = lower
    elif strat2.pure_action is not None:
        value = upper
    logger.debug(f"Solved {zsg.rows}x{zsg.cols} zero-sum game: value={value:.9g}, gap={upper - lower:.3g}")
    return ZeroSumSolution(value=value, strat1=strat1, strat2=strat2)


def guaranteed_payoff(matrix: Sequence[Sequence[float]], strategy: MixedStrategy) -> float:
    """Row player's worst case over the column player's pure replies"""
    return float(np.min(strategy.as_array() @ np.asarray(matrix, dtype=float)))
