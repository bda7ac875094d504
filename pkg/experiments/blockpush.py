"""
Block pushing
A teacher pushes gently for K iterations and then hard; counts hard pushes and block distance
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from config import config
from experiments.runner import RESULT_COLUMNS, result_row, run_trials
from games.errors import ConfigError
from learning.schedules import parse_schedule
from rng import derive_seed
from teaching.games import block_pushing
from teaching.session import StudentSpec, run_session
from teaching.strategies import TeacherSpec

logger = logging.getLogger(__name__)

HARD = 0
GENTLE = 1


@dataclass(frozen=True)
class BlockPushConfig:
    h: float = 1.0
    c_factor: float = 2.0
    K: int = 0
    iterations: int = 10000
    alpha: float = 0.001
    schedule: str = 'decay'
    trials: int = 50

    def __post_init__(self):
        if not self.h > 0 or not self.c_factor > 0:
            raise ConfigError(f'h and c_factor must be positive, got {self.h} and {self.c_factor}')
        if not 0 <= self.K <= self.iterations:
            raise ConfigError(f'K must lie in [0, {self.iterations}], got {self.K}')
        if self.trials < 1:
            raise ConfigError(f'trials must be at least 1, got {self.trials}')
        parse_schedule(self.schedule)

    def distance(self, hard_pushers: np.ndarray) -> np.ndarray:
        """Block movement in one iteration given how many agents pushed hard"""
        return self.c_factor * hard_pushers * self.h + (2 - hard_pushers) * self.h


def _trial(cfg: BlockPushConfig, teacher: TeacherSpec, seed: int):
    game = block_pushing()
    student = StudentSpec('bql', alpha=cfg.alpha)
    log = run_session(student, teacher, game, cfg.iterations, parse_schedule(cfg.schedule), seed)
    pushers = (np.asarray(log.student_actions) == HARD).astype(int) + \
        (np.asarray(log.teacher_actions) == HARD).astype(int)
    student_hard = int(np.sum(np.asarray(log.student_actions) == HARD))
    return int(pushers.sum()), student_hard, float(cfg.distance(pushers).sum())


def _rows(series: str, x: float, cfg: BlockPushConfig, results, seed: int):
    results = np.array(results, dtype=float)
    return [
        result_row(f'{series}/hard', x, cfg.iterations, results[:, 0], seed),
        result_row(f'{series}/student-hard', x, cfg.iterations, results[:, 1], seed),
        result_row(f'{series}/distance', x, cfg.iterations, results[:, 2], seed),
    ]


def blockpush(cfg: BlockPushConfig, K_values: Sequence[int], seed: int = config.PCMAS_SEED,
              baseline: bool = True, n_jobs: Optional[int] = None) -> pd.DataFrame:
    """
    Rows per K: hard-push count of both agents, of the student alone, and total distance.
    With `baseline`, a two-learner run (teacher an identical blind Q-learner) is added with x = -1.
    """
    rows = []
    for K in K_values:
        run_cfg = BlockPushConfig(cfg.h, cfg.c_factor, K, cfg.iterations, cfg.alpha, cfg.schedule, cfg.trials)
        teacher = TeacherSpec('delayed', delay=K, before=GENTLE, after=HARD)
        seeds = [derive_seed(seed, K, trial) for trial in range(cfg.trials)]
        results = run_trials(lambda s: _trial(run_cfg, teacher, s), seeds, n_jobs)
        rows.extend(_rows('fig8-blockpush', K, run_cfg, results, seed))
        logger.info(f"Block pushing K={K}: {np.mean([r[0] for r in results]):.1f} hard pushes")

    if baseline:
        teacher = TeacherSpec('learner')
        seeds = [derive_seed(seed, 'two-bql', trial) for trial in range(cfg.trials)]
        results = run_trials(lambda s: _trial(cfg, teacher, s), seeds, n_jobs)
        rows.extend(_rows('fig8-blockpush/two-bql', -1, cfg, results, seed))
        logger.info(f"Block pushing two-learner baseline: {np.mean([r[0] for r in results]):.1f} hard pushes")
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)
