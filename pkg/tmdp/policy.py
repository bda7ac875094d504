"""
Solved teaching policies
Binary policy files, temperature-indexed policy banks and student tracking
"""
import logging
import math
import os
import struct
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from config import config
from games.errors import ConfigError, MissingPolicyError
from learning.learners import BqlState
from teaching.games import TeachingGame
from tmdp.grid import QGrid
from tmdp.model import build_tmdp
from tmdp.solve import value_iteration

logger = logging.getLogger(__name__)

MAGIC = b'PCMASPOL'
VERSION = 1
# magic, version, q_lo, q_hi, cells, T, gamma0, alpha
HEADER = struct.Struct('<8sHddIddd')

BANK_TEMPERATURES = tuple(float(t) for t in np.geomspace(75.0, 0.5, 12))


@dataclass(eq=False)
class TeachingPolicy:
    """Optimal teacher action and value per grid state for one temperature"""
    grid: QGrid
    T: float
    gamma0: float
    alpha: float
    actions: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        self.actions = np.asarray(self.actions, dtype=np.uint8)
        self.V = np.asarray(self.V, dtype=np.float64)
        if self.actions.shape != (self.grid.n_states,) or self.V.shape != (self.grid.n_states,):
            raise ConfigError(f'policy arrays must hold {self.grid.n_states} states')

    @classmethod
    def from_solution(cls, model, solution) -> 'TeachingPolicy':
        return cls(grid=model.grid, T=model.T, gamma0=solution.gamma0, alpha=model.alpha,
                   actions=solution.policy, V=solution.V)

    def action_at(self, q1: float, q2: float) -> int:
        return int(self.actions[self.grid.state(q1, q2)])

    def value_at(self, q1: float, q2: float) -> float:
        return float(self.V[self.grid.state(q1, q2)])

    def lookup(self, q1: float, q2: float, T: Optional[float] = None) -> int:
        return self.action_at(q1, q2)

    def save(self, path: str) -> None:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'wb') as f:
            f.write(HEADER.pack(MAGIC, VERSION, self.grid.q_lo, self.grid.q_hi, self.grid.cells,
                                self.T, self.gamma0, self.alpha))
            f.write(self.actions.astype('<u1').tobytes())
            f.write(self.V.astype('<f8').tobytes())
        logger.info(f"Saved teaching policy T={self.T:g} to {path}")

    @classmethod
    def load(cls, path: str) -> 'TeachingPolicy':
        try:
            with open(path, 'rb') as f:
                raw = f.read()
        except FileNotFoundError as e:
            raise MissingPolicyError(f"Policy file not found: {path}; run 'pcmas tmdp solve' first") from e

        if len(raw) < HEADER.size:
            raise ConfigError(f'{path} is too short to be a policy file')
        magic, version, q_lo, q_hi, cells, T, gamma0, alpha = HEADER.unpack_from(raw)
        if magic != MAGIC:
            raise ConfigError(f'{path} is not a policy file')
        if version != VERSION:
            raise ConfigError(f'{path} has policy format version {version}, expected {VERSION}')

        grid = QGrid(q_lo, q_hi, cells)
        n = grid.n_states
        if len(raw) != HEADER.size + n + 8 * n:
            raise ConfigError(f'{path} is truncated or has trailing data')
        actions = np.frombuffer(raw, dtype='<u1', count=n, offset=HEADER.size)
        V = np.frombuffer(raw, dtype='<f8', count=n, offset=HEADER.size + n)
        return cls(grid=grid, T=T, gamma0=gamma0, alpha=alpha, actions=actions.copy(), V=V.copy())


def policy_filename(T: float) -> str:
    return f'policy_T{T:.6f}.bin'


class PolicyBank:
    """
    Policies solved at several fixed temperatures. Under a decaying schedule the
    teacher consults the policy whose temperature is nearest to the current one in
    log space; this approximates the optimal policy for a changing temperature.
    """

    approximate = True

    def __init__(self, policies: Sequence[TeachingPolicy]):
        if not policies:
            raise ConfigError('a policy bank needs at least one policy')
        self.policies = sorted(policies, key=lambda p: p.T)
        self._log_temps = np.log([p.T for p in self.policies])

    @property
    def temperatures(self) -> List[float]:
        return [p.T for p in self.policies]

    def select(self, T: float) -> TeachingPolicy:
        return self.policies[int(np.argmin(np.abs(self._log_temps - math.log(T))))]

    def lookup(self, q1: float, q2: float, T: Optional[float] = None) -> int:
        if T is None:
            raise ConfigError('a policy bank lookup needs the current temperature')
        return self.select(T).action_at(q1, q2)

    def save(self, directory: str) -> None:
        os.makedirs(directory, exist_ok=True)
        for policy in self.policies:
            policy.save(os.path.join(directory, policy_filename(policy.T)))

    @classmethod
    def load(cls, directory: str) -> 'PolicyBank':
        if not os.path.isdir(directory):
            raise MissingPolicyError(f"Policy bank directory not found: {directory}; "
                                     f"run 'pcmas tmdp solve-bank' first")
        files = sorted(name for name in os.listdir(directory)
                       if name.startswith('policy_T') and name.endswith('.bin'))
        if not files:
            raise MissingPolicyError(f"No policy files in {directory}; run 'pcmas tmdp solve-bank' first")
        return cls([TeachingPolicy.load(os.path.join(directory, name)) for name in files])


def load_policy_source(path: str):
    """A single policy file or a bank directory"""
    if os.path.isdir(path):
        return PolicyBank.load(path)
    return TeachingPolicy.load(path)


def solve_policy(game: TeachingGame, grid: QGrid, T: float, alpha: Optional[float] = None,
                 gamma0: Optional[float] = None, tol: Optional[float] = None) -> TeachingPolicy:
    alpha = config.LEARNING_RATE if alpha is None else alpha
    model = build_tmdp(game, grid, T, alpha)
    return TeachingPolicy.from_solution(model, value_iteration(model, gamma0, tol))


def solve_bank(game: TeachingGame, grid: QGrid, temperatures: Iterable[float] = BANK_TEMPERATURES,
               alpha: Optional[float] = None, gamma0: Optional[float] = None,
               tol: Optional[float] = None, n_jobs: Optional[int] = None) -> PolicyBank:
    temperatures = list(temperatures)
    logger.info(f"Solving policy bank over {len(temperatures)} temperatures")
    policies = Parallel(n_jobs=n_jobs or config.PCMAS_THREADS)(
        delayed(solve_policy)(game, grid, T, alpha, gamma0, tol) for T in temperatures
    )
    return PolicyBank(policies)


def track_student(initial_q: Tuple[float, float], alpha: float,
                  observations: Iterable[Tuple[int, float]]) -> Tuple[float, float]:
    """Replay the blind Q-learning update over (student action, reward) observations"""
    student = BqlState(q=list(initial_q), alpha=alpha)
    for action, reward in observations:
        student.learn(action, -1, reward)
    return student.q_values()
