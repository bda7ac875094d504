"""
Reinforcement-learning students
Blind Q-learner (one value per action) and Q-learner over recent joint actions
"""
import copy
import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from games.errors import DomainError

logger = logging.getLogger(__name__)

COOP = 0
DEFECT = 1
N_ACTIONS = 2


def boltzmann(qvalues: Sequence[float], T: float) -> np.ndarray:
    """P(a) proportional to exp(q(a) / T), computed with the max exponent subtracted"""
    if not T > 0:
        raise DomainError(f'temperature must be positive, got {T}')
    z = np.asarray(qvalues, dtype=float) / T
    z = np.exp(z - z.max())
    return z / z.sum()


def _first_probability(q0: float, q1: float, T: float) -> float:
    # 1 / (1 + exp((q1 - q0) / T)) without overflow
    return 0.5 * (1.0 - math.tanh((q1 - q0) / (2.0 * T)))


def _choose(q0: float, q1: float, T: float, rng: np.random.Generator) -> int:
    if not T > 0:
        raise DomainError(f'temperature must be positive, got {T}')
    return COOP if rng.random() < _first_probability(q0, q1, T) else DEFECT


@dataclass
class BqlState:
    """Blind Q-learner: keeps q(a) only and averages the rewards it perceives"""
    q: List[float] = field(default_factory=lambda: [0.0, 0.0])
    alpha: float = 0.1

    kind = 'bql'

    def q_values(self) -> Tuple[float, float]:
        return self.q[0], self.q[1]

    def act(self, T: float, rng: np.random.Generator) -> int:
        return _choose(self.q[0], self.q[1], T, rng)

    def learn(self, own: int, other: int, reward: float) -> None:
        self.q[own] = (1.0 - self.alpha) * self.q[own] + self.alpha * reward


def bql_update(s: BqlState, a: int, R: float) -> BqlState:
    """New state with q(a) moved to (1 - alpha) q(a) + alpha R"""
    updated = copy.deepcopy(s)
    updated.learn(a, -1, R)
    return updated


def encode_state(history: Sequence[Tuple[int, int]], m: int) -> int:
    """
    Base-4 index of the last m joint actions, oldest first in `history`.
    Digit = 2 * own action + other action; the most recent is least significant.
    """
    if len(history) != m:
        raise DomainError(f'history must hold exactly {m} joint actions, got {len(history)}')
    index = 0
    for own, other in history:
        if own not in (COOP, DEFECT) or other not in (COOP, DEFECT):
            raise DomainError(f'invalid joint action {(own, other)}')
        index = index * 4 + 2 * own + other
    return index


def decode_state(index: int, m: int) -> List[Tuple[int, int]]:
    """Inverse of encode_state"""
    if not 0 <= index < 4 ** m:
        raise DomainError(f'state {index} outside [0, {4 ** m})')
    history = []
    for _ in range(m):
        digit = index % 4
        history.append((digit // 2, digit % 2))
        index //= 4
    return history[::-1]


@dataclass
class QlState:
    """Q-learner whose state encodes its last `memory` joint actions"""
    memory: int = 1
    alpha: float = 0.1
    gamma: float = 0.9
    q: np.ndarray = None
    current_state: int = 0

    kind = 'ql'

    def __post_init__(self):
        if self.memory < 1:
            raise DomainError(f'memory must be at least 1, got {self.memory}')
        if self.q is None:
            self.q = np.zeros((self.n_states, N_ACTIONS))
        if self.q.shape != (self.n_states, N_ACTIONS):
            raise DomainError(f'q table must have shape {(self.n_states, N_ACTIONS)}, got {self.q.shape}')
        if not 0 <= self.current_state < self.n_states:
            raise DomainError(f'state {self.current_state} outside [0, {self.n_states})')

    @property
    def n_states(self) -> int:
        return 4 ** self.memory

    @classmethod
    def start(cls, rng: np.random.Generator, memory: int = 1, alpha: float = 0.1, gamma: float = 0.9) -> 'QlState':
        """Fresh learner whose initial state is a uniformly drawn fictitious history"""
        state = int(rng.integers(4 ** memory))
        logger.debug(f"Q-learner memory={memory} starts in state {state} {decode_state(state, memory)}")
        return cls(memory=memory, alpha=alpha, gamma=gamma, current_state=state)

    def next_state(self, own: int, other: int) -> int:
        return (self.current_state * 4 + 2 * own + other) % self.n_states

    def q_values(self) -> Tuple[float, float]:
        row = self.q[self.current_state]
        return float(row[0]), float(row[1])

    def act(self, T: float, rng: np.random.Generator) -> int:
        q0, q1 = self.q_values()
        return _choose(q0, q1, T, rng)

    def learn(self, own: int, other: int, reward: float) -> None:
        s1 = self.next_state(own, other)
        self._backup(self.current_state, own, reward, s1)
        self.current_state = s1

    def _backup(self, s0: int, a: int, R: float, s1: int) -> None:
        target = R + self.gamma * self.q[s1].max()
        self.q[s0, a] = (1.0 - self.alpha) * self.q[s0, a] + self.alpha * target


def ql_update(s: QlState, s0: int, a: int, R: float, s1: int) -> QlState:
    """New state after one backup of q(s0, a) toward R + gamma max q(s1, .)"""
    for state in (s0, s1):
        if not 0 <= state < s.n_states:
            raise DomainError(f'state {state} outside [0, {s.n_states})')
    updated = copy.deepcopy(s)
    updated._backup(s0, a, R, s1)
    updated.current_state = s1
    return updated


def act(learner, T: float, rng: np.random.Generator) -> int:
    """Boltzmann-sampled action of a learner; consumes exactly one uniform draw"""
    return learner.act(T, rng)
