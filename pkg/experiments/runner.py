"""
Experiment runner
Seeded trials fanned out with joblib and reduced into result rows
"""
import logging
import os
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from config import config
from experiments.specs import ExperimentSpec
from games.errors import ConfigError
from learning.schedules import Fixed, parse_schedule
from rng import derive_seed
from teaching.session import run_session
from teaching.strategies import TeacherSpec, parse_teacher
from tmdp.policy import PolicyBank, TeachingPolicy, policy_filename

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ['experiment', 'x', 'iterations', 'mean', 'sd', 'trials', 'seed']


def result_row(experiment: str, x: float, iterations: int, values: Sequence[float], seed: int) -> dict:
    values = np.asarray(values, dtype=float)
    sd = float(values.std(ddof=1)) if len(values) > 1 else 0.0
    return {'experiment': experiment, 'x': x, 'iterations': iterations,
            'mean': float(values.mean()), 'sd': sd, 'trials': len(values), 'seed': seed}


def run_trials(trial: Callable, seeds: Iterable[int], n_jobs: Optional[int] = None) -> List:
    """Evaluate `trial(seed)` for every seed; results keep seed order"""
    return Parallel(n_jobs=n_jobs or config.PCMAS_THREADS)(delayed(trial)(seed) for seed in seeds)


def _prefix_rates(student, teacher: TeacherSpec, game, schedule, curves: Sequence[int], seed: int) -> List[float]:
    log = run_session(student, teacher, game, max(curves), schedule, seed)
    return [log.rate(game.target_action, n) for n in curves]


def _window_rates(student, teacher: TeacherSpec, game, schedule, iterations: int,
                  window: int, seed: int) -> List[float]:
    log = run_session(student, teacher, game, iterations, schedule, seed)
    return [rate for _, rate in log.window_rates(window, game.target_action)]


def _sweep_policy(spec: ExperimentSpec, T: float) -> TeachingPolicy:
    directory = spec.policy_dir or config.POLICY_DIR
    return TeachingPolicy.load(os.path.join(directory, policy_filename(T)))


def _teacher(spec: ExperimentSpec, text: str, T: Optional[float] = None) -> TeacherSpec:
    teacher = parse_teacher(text)
    if teacher.kind != 'optimal':
        return teacher
    if T is not None:
        return teacher.with_policy(_sweep_policy(spec, T))
    logger.info("Optimal teacher under a changing temperature uses the nearest solved policy (approximate)")
    return teacher.with_policy(PolicyBank.load(spec.policy_dir or config.POLICY_DIR))


def run_experiment(spec: ExperimentSpec, n_jobs: Optional[int] = None) -> pd.DataFrame:
    """All rows of a temperature-sweep or time-series experiment; a pure function of the spec"""
    rows = []
    for teacher_text in spec.teachers:
        series = spec.series_id(teacher_text)
        if spec.axis == 'temperature':
            for T in spec.temperatures:
                teacher = _teacher(spec, teacher_text, T)
                seeds = [derive_seed(spec.seed, T, trial) for trial in range(spec.trials)]
                results = run_trials(
                    lambda s: _prefix_rates(spec.student, teacher, spec.game, Fixed(T), spec.iterations, s),
                    seeds, n_jobs)
                per_curve = np.array(results)
                for k, n in enumerate(spec.iterations):
                    rows.append(result_row(series, T, n, per_curve[:, k], spec.seed))
                logger.info(f"{series} T={T:g}: coop rate {per_curve[:, -1].mean():.3f} "
                            f"over {spec.trials} trials")
        else:
            teacher = _teacher(spec, teacher_text)
            schedule = parse_schedule(spec.schedule)
            total = max(spec.iterations)
            seeds = [derive_seed(spec.seed, spec.schedule, trial) for trial in range(spec.trials)]
            results = np.array(run_trials(
                lambda s: _window_rates(spec.student, teacher, spec.game, schedule, total, spec.window, s),
                seeds, n_jobs))
            for k, start in enumerate(range(0, total, spec.window)):
                rows.append(result_row(series, start, total, results[:, k], spec.seed))
            logger.info(f"{series}: final-window coop rate {results[:, -1].mean():.3f}")
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def write_results(frame: pd.DataFrame, path: str) -> None:
    missing = [c for c in RESULT_COLUMNS if c not in frame.columns]
    if missing:
        raise ConfigError(f'result frame lacks columns {missing}')
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    frame[RESULT_COLUMNS].to_csv(path, index=False)
    logger.info(f"Wrote {len(frame)} rows to {path}")
