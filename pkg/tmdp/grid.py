"""
Discretization of the blind Q-learner's state space
Uniform cells per axis; a q-value maps to the cell whose center is nearest
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from games.errors import DomainError

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class QGrid:
    q_lo: float = -13.0
    q_hi: float = 13.0
    cells: int = 200

    def __post_init__(self):
        if not self.q_lo < self.q_hi:
            raise DomainError(f'grid bounds must satisfy q_lo < q_hi, got [{self.q_lo}, {self.q_hi}]')
        if self.cells < 2:
            raise DomainError(f'need at least 2 cells per axis, got {self.cells}')

    @classmethod
    def for_game(cls, game, cells: int = 200) -> 'QGrid':
        """Bounds from the game's student payoff range, which confines blind Q-learner values"""
        lo, hi = game.payoff_range()
        if lo == hi:
            lo, hi = lo - 1.0, hi + 1.0
        return cls(lo, hi, cells)

    @property
    def width(self) -> float:
        return (self.q_hi - self.q_lo) / self.cells

    @property
    def n_states(self) -> int:
        return self.cells * self.cells

    @property
    def centers(self) -> np.ndarray:
        return self.q_lo + (np.arange(self.cells) + 0.5) * self.width

    def index(self, q: ArrayLike) -> ArrayLike:
        """Cell index per axis; values outside the bounds are clamped, midpoints round up"""
        q = np.clip(q, self.q_lo, self.q_hi)
        i = np.floor((q - self.q_lo) * self.cells / (self.q_hi - self.q_lo))
        i = np.clip(i, 0, self.cells - 1).astype(np.int64)
        return int(i) if np.ndim(i) == 0 else i

    def state(self, q1: ArrayLike, q2: ArrayLike) -> ArrayLike:
        return self.index(q1) * self.cells + self.index(q2)

    def state_values(self, state: int) -> Tuple[float, float]:
        """Cell-center q-values of a state"""
        if not 0 <= state < self.n_states:
            raise DomainError(f'state {state} outside [0, {self.n_states})')
        centers = self.centers
        i1, i2 = divmod(int(state), self.cells)
        return float(centers[i1]), float(centers[i2])

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(q1, q2) cell centers for every state in state order"""
        q1, q2 = np.meshgrid(self.centers, self.centers, indexing='ij')
        return q1.ravel(), q2.ravel()


def snap(q1: float, q2: float, grid: QGrid) -> int:
    return grid.state(q1, q2)
