"""
Teacher MDP
States are grid cells of the student's q-values, actions are teacher actions,
transitions follow the student's Boltzmann choice and its blind Q-learning update.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from scipy import sparse
from scipy.special import expit

from games.errors import ConfigError, DomainError
from rng import make_rng
from teaching.games import TeachingGame
from tmdp.grid import QGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TmdpModel:
    game: TeachingGame
    grid: QGrid
    T: float
    alpha: float
    transitions: List[sparse.csr_matrix]
    reward: np.ndarray
    rho: np.ndarray

    @property
    def n_states(self) -> int:
        return self.grid.n_states

    @property
    def n_actions(self) -> int:
        return len(self.transitions)

    def successors(self, state: int, teacher_action: int) -> List[tuple]:
        """[(successor state, probability)] of one state-action pair"""
        row = self.transitions[teacher_action].getrow(state)
        return [(int(s), float(p)) for s, p in zip(row.indices, row.data)]


def build_tmdp(game: TeachingGame, grid: QGrid, T: float, alpha: float = 0.1,
               u: Optional[Sequence[float]] = None) -> TmdpModel:
    if not T > 0:
        raise DomainError(f'temperature must be positive, got {T}')
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f'alpha must lie in [0, 1], got {alpha}')
    u = np.asarray(u if u is not None else game.u, dtype=float)
    if u.shape != (2,) or u.min() < 0:
        raise ConfigError(f'valuation u must be two non-negative numbers, got {u.tolist()}')

    q1, q2 = grid.mesh()
    i1, i2 = grid.index(q1), grid.index(q2)
    states = np.arange(grid.n_states)
    # P(student plays action 0) under Boltzmann selection
    rho0 = expit((q1 - q2) / T)
    payoffs = game.student_payoffs

    transitions = []
    for t in (0, 1):
        moved_first = grid.index((1.0 - alpha) * q1 + alpha * payoffs[0, t]) * grid.cells + i2
        moved_second = i1 * grid.cells + grid.index((1.0 - alpha) * q2 + alpha * payoffs[1, t])
        matrix = sparse.coo_matrix(
            (np.concatenate([rho0, 1.0 - rho0]),
             (np.concatenate([states, states]), np.concatenate([moved_first, moved_second]))),
            shape=(grid.n_states, grid.n_states),
        ).tocsr()
        matrix.eliminate_zeros()
        transitions.append(matrix)

    reward = rho0 * u[0] + (1.0 - rho0) * u[1]
    logger.info(f"Built teacher MDP: {grid.n_states} states, T={T:g}, alpha={alpha:g}, "
                f"{sum(m.nnz for m in transitions)} transitions")
    return TmdpModel(game=game, grid=grid, T=float(T), alpha=float(alpha),
                     transitions=transitions, reward=reward, rho=np.column_stack([rho0, 1.0 - rho0]))


def heuristic_policy(model: TmdpModel, kind: str, seed: int = 0) -> np.ndarray:
    """State policy `coop` (always I), `defect` (always II) or `random` (uniform per state)"""
    if kind == 'coop':
        return np.zeros(model.n_states, dtype=np.int64)
    if kind == 'defect':
        return np.ones(model.n_states, dtype=np.int64)
    if kind == 'random':
        return make_rng(seed).integers(model.n_actions, size=model.n_states)
    raise ConfigError(f"Unknown heuristic policy {kind!r}; use 'coop', 'defect' or 'random'")
