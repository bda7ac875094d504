"""
Monte-Carlo value of a teaching strategy
Discounted sum of the teacher's valuation of student actions, averaged over seeded rollouts
"""
import math
from typing import Optional

import numpy as np

from experiments.runner import run_trials
from games.errors import DomainError
from learning.schedules import Fixed, TemperatureSchedule
from rng import derive_seed
from teaching.games import TeachingGame
from teaching.session import StudentSpec, run_session
from teaching.strategies import TeacherSpec


def horizon_for(gamma0: float, bias: float) -> int:
    """Smallest horizon H with gamma0^H / (1 - gamma0) below `bias` for valuations in [0, 1]"""
    if not 0.0 <= gamma0 < 1.0:
        raise DomainError(f'gamma0 must lie in [0, 1), got {gamma0}')
    if gamma0 == 0.0:
        return 1
    return max(1, math.ceil(math.log(bias * (1.0 - gamma0)) / math.log(gamma0)))


def _rollout(teacher: TeacherSpec, student: StudentSpec, game: TeachingGame, gamma0: float,
             horizon: int, schedule: TemperatureSchedule, seed: int) -> float:
    log = run_session(student, teacher, game, horizon, schedule, seed)
    values = np.asarray(game.u, dtype=float)[np.asarray(log.student_actions)]
    return float(np.dot(gamma0 ** np.arange(horizon), values))


def mc_values(teacher: TeacherSpec, student: StudentSpec, game: TeachingGame, gamma0: float,
              horizon: int, trials: int, seed: int, schedule: Optional[TemperatureSchedule] = None,
              n_jobs: Optional[int] = None) -> np.ndarray:
    """Per-trial discounted values, in trial order"""
    if not 0.0 <= gamma0 < 1.0:
        raise DomainError(f'gamma0 must lie in [0, 1), got {gamma0}')
    if horizon < 1 or trials < 1:
        raise DomainError(f'horizon and trials must be positive, got {horizon} and {trials}')
    schedule = schedule or Fixed(1.0)
    seeds = [derive_seed(seed, 'mc', trial) for trial in range(trials)]
    return np.array(run_trials(
        lambda s: _rollout(teacher, student, game, gamma0, horizon, schedule, s), seeds, n_jobs))


def mc_value(teacher: TeacherSpec, student: StudentSpec, game: TeachingGame, gamma0: float,
             horizon: int, trials: int, seed: int, schedule: Optional[TemperatureSchedule] = None,
             n_jobs: Optional[int] = None) -> float:
    return float(mc_values(teacher, student, game, gamma0, horizon, trials, seed, schedule, n_jobs).mean())
