"""
DIF sweep
Tit-for-tat teaching a memory-1 Q-learner across payoff matrices and student discounts
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import config
from experiments.runner import RESULT_COLUMNS, result_row, run_trials
from learning.schedules import Decay, TemperatureSchedule
from rng import derive_seed
from teaching.games import TeachingGame, dif
from teaching.session import StudentSpec, run_session
from teaching.strategies import TeacherSpec

logger = logging.getLogger(__name__)

# (a, b, c, d) student payoffs; DIF spans [-18, 29.1] over the discounts below.
# Above DIF 8 only the teaching PD tempts the student past mutual cooperation;
# at a low temperature such games stall near a 0.5 rate.
DIF_MATRICES: Tuple[Tuple[float, float, float, float], ...] = (
    (10, -13, 13, -6), (5, -10, 10, 0), (3, 0, 5, 1), (1, 0, 10, 5),
    (0, -5, 5, 0), (2, -20, 4, -1), (4, -4, 6, 2), (1, -8, 9, -1),
    (5, -1, 6, 3), (0, -3, 10, 2), (2, -2, 12, 4), (1, -1, 3, 1),
    (0, -12, 6, -4), (4, -8, 14, 0), (5, 5, 5, 5),
    # defection dominant
    (-2, -4, 3, 1), (-1, -6, 4, 2), (0, -2, 14, 6), (-4, -6, 6, 4), (-3, -8, 2, 0),
    # cooperation dominant
    (6, 2, -2, -4), (4, 0, -1, -3), (8, -1, -2, -6), (3, 1, -1, -2),
    (5, -2, -1, -5), (2, 1, -3, -4), (9, 3, -3, -6),
    # coordination on (I, I)
    (6, -5, -1, -3),
)
DIF_GAMMAS = (0.5, 0.7, 0.9)


def _coop_rate(game: TeachingGame, student: StudentSpec, iterations: int,
               schedule: TemperatureSchedule, seed: int) -> float:
    return run_session(student, TeacherSpec('tft'), game, iterations, schedule, seed).coop_rate


def dif_sweep(matrices: Sequence[Tuple[float, float, float, float]] = DIF_MATRICES,
              gammas: Sequence[float] = DIF_GAMMAS, trials: int = 100, iterations: int = 10000,
              seed: int = config.PCMAS_SEED, schedule: Optional[TemperatureSchedule] = None,
              alpha: Optional[float] = None, n_jobs: Optional[int] = None) -> pd.DataFrame:
    """One row per (matrix, discount): x is the DIF value, mean the coop rate"""
    schedule = schedule or Decay()
    alpha = config.LEARNING_RATE if alpha is None else alpha
    rows = []
    for entries in matrices:
        game = TeachingGame(*entries)
        for gamma in gammas:
            student = StudentSpec('ql', alpha=alpha, gamma=gamma, memory=1)
            seeds = [derive_seed(seed, tuple(entries), gamma, trial) for trial in range(trials)]
            rates = run_trials(lambda s: _coop_rate(game, student, iterations, schedule, s), seeds, n_jobs)
            x = round(dif(game, gamma), 10)
            rows.append(result_row('fig7-dif', x, iterations, rates, seed))
            logger.info(f"DIF sweep {entries} gamma={gamma}: DIF {x:g}, coop rate {np.mean(rates):.3f}")
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)
