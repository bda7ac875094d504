"""
Experiment specifications
Presets reproducing the teaching experiments plus user-defined runs
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

from config import config
from games.errors import ConfigError
from learning.schedules import parse_schedule
from teaching.games import TeachingGame, teaching_pd
from teaching.session import StudentSpec
from teaching.strategies import parse_teacher

TEMPERATURE_AXIS = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0)
ITERATION_CURVES = (1000, 5000, 10000)
TIME_WINDOW = 250

EXPERIMENT_IDS = ('fig2-opt', 'fig2-twoql', 'fig3-tft', 'fig3-2tft', 'fig4-decay', 'fig5-ql',
                  'fig6-ql-decay', 'fig7-dif', 'fig8-blockpush', 'custom')


@dataclass(frozen=True)
class ExperimentSpec:
    """
    One teaching experiment. `axis` is 'temperature' (a fixed-temperature sweep, one
    curve per entry of `iterations`) or 'time' (coop rate per window under `schedule`).
    """
    experiment: str
    game: TeachingGame = field(default_factory=teaching_pd)
    student: StudentSpec = field(default_factory=StudentSpec)
    teachers: Tuple[str, ...] = ('tft',)
    axis: str = 'temperature'
    temperatures: Tuple[float, ...] = TEMPERATURE_AXIS
    schedule: str = 'decay'
    iterations: Tuple[int, ...] = ITERATION_CURVES
    trials: int = 100
    seed: int = config.PCMAS_SEED
    window: int = TIME_WINDOW
    policy_dir: Optional[str] = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENT_IDS:
            raise ConfigError(f"Unknown experiment {self.experiment!r}; use one of {', '.join(EXPERIMENT_IDS)}")
        if self.trials < 1:
            raise ConfigError(f'trials must be at least 1, got {self.trials}')
        if not self.iterations or min(self.iterations) < 1:
            raise ConfigError(f'iterations must all be at least 1, got {self.iterations}')
        if self.axis not in ('temperature', 'time'):
            raise ConfigError(f"axis must be 'temperature' or 'time', got {self.axis!r}")
        if self.axis == 'temperature' and (not self.temperatures or min(self.temperatures) <= 0):
            raise ConfigError('a temperature sweep needs positive temperatures')
        if self.window < 1:
            raise ConfigError(f'window must be at least 1, got {self.window}')
        if not self.teachers:
            raise ConfigError('an experiment needs at least one teacher')
        for teacher in self.teachers:
            parse_teacher(teacher)
        parse_schedule(self.schedule)

    def series_id(self, teacher: str) -> str:
        return f'{self.experiment}/{teacher}' if len(self.teachers) > 1 else self.experiment

    def with_overrides(self, **overrides) -> 'ExperimentSpec':
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _bql() -> StudentSpec:
    return StudentSpec('bql', alpha=config.LEARNING_RATE)


def _ql(memory: int = 1) -> StudentSpec:
    return StudentSpec('ql', alpha=config.LEARNING_RATE, gamma=config.STUDENT_DISCOUNT, memory=memory)


def preset(experiment: str) -> ExperimentSpec:
    """The preset spec for a sweep or time-series experiment; DIF and block pushing have their own runners"""
    presets: Dict[str, ExperimentSpec] = {
        'fig2-opt': ExperimentSpec('fig2-opt', student=_bql(), teachers=('optimal',),
                                   policy_dir=config.POLICY_DIR),
        'fig2-twoql': ExperimentSpec('fig2-twoql', student=_bql(), teachers=('learner',)),
        'fig3-tft': ExperimentSpec('fig3-tft', student=_bql(), teachers=('tft',)),
        'fig3-2tft': ExperimentSpec('fig3-2tft', student=_bql(), teachers=('2tft',)),
        'fig4-decay': ExperimentSpec('fig4-decay', student=_bql(),
                                     teachers=('optimal', 'learner', 'tft', '2tft'),
                                     axis='time', iterations=(10000,), policy_dir=config.POLICY_DIR),
        'fig5-ql': ExperimentSpec('fig5-ql', student=_ql(), teachers=('tft', 'learner')),
        'fig6-ql-decay': ExperimentSpec('fig6-ql-decay', student=_ql(), teachers=('tft', 'learner'),
                                        axis='time', iterations=(10000,)),
    }
    if experiment not in presets:
        raise ConfigError(f'{experiment!r} has no sweep preset')
    return presets[experiment]
