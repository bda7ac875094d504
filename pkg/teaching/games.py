"""
Teaching games
2x2 student/teacher games, their teachability class and the DIF predictor
"""
import json
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from games.errors import ConfigError

logger = logging.getLogger(__name__)


class TeachingClass(str, Enum):
    DOMINANT = 'dominant'
    PREEMPTABLE = 'preemptable'
    CHALLENGING = 'challenging'


@dataclass(frozen=True)
class Classification:
    kind: TeachingClass
    preempt_action: Optional[int] = None

    def describe(self, teacher_names: Tuple[str, str] = ('I', 'II')) -> str:
        if self.kind == TeachingClass.PREEMPTABLE:
            return f'{self.kind.value}({teacher_names[self.preempt_action]})'
        return self.kind.value


@dataclass(frozen=True)
class TeachingGame:
    """
    Student payoffs: a = action 1 vs I, b = 1 vs II, c = 2 vs I, d = 2 vs II.
    `teacher` holds the teacher's payoffs in the same layout, if she has any.
    """
    a: float
    b: float
    c: float
    d: float
    teacher: Optional[Tuple[float, float, float, float]] = None
    target_action: int = 0
    u: Optional[Tuple[float, float]] = None
    student_names: Tuple[str, str] = ('Coop', 'Defect')
    teacher_names: Tuple[str, str] = ('Coop', 'Defect')

    def __post_init__(self):
        entries = [self.a, self.b, self.c, self.d] + list(self.teacher or ())
        if not np.all(np.isfinite(entries)):
            raise ConfigError('teaching game entries must be finite')
        if self.teacher is not None and len(self.teacher) != 4:
            raise ConfigError('teacher payoffs need four entries')
        if self.target_action not in (0, 1):
            raise ConfigError(f'target action must be 0 or 1, got {self.target_action}')
        if self.u is None:
            u = [0.0, 0.0]
            u[self.target_action] = 1.0
            object.__setattr__(self, 'u', tuple(u))
        if min(self.u) < 0:
            raise ConfigError(f'valuation u must be non-negative, got {self.u}')

    @property
    def student_payoffs(self) -> np.ndarray:
        """[student action, teacher action] -> student payoff"""
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    @property
    def teacher_payoffs(self) -> np.ndarray:
        if self.teacher is None:
            raise ConfigError('this teaching game has no teacher payoffs')
        return np.array(self.teacher, dtype=float).reshape(2, 2)

    @property
    def has_teacher_payoffs(self) -> bool:
        return self.teacher is not None

    def payoff_range(self) -> Tuple[float, float]:
        values = (self.a, self.b, self.c, self.d)
        return float(min(values)), float(max(values))


def classify(game: TeachingGame) -> Classification:
    """Dominant, preemptable (with the teacher action to fix) or challenging; ties are challenging"""
    payoffs = game.student_payoffs
    target, other = game.target_action, 1 - game.target_action
    better = [payoffs[target, t] > payoffs[other, t] for t in (0, 1)]
    if all(better):
        return Classification(TeachingClass.DOMINANT)
    if any(better):
        return Classification(TeachingClass.PREEMPTABLE, preempt_action=better.index(True))
    return Classification(TeachingClass.CHALLENGING)


def dif(game: TeachingGame, gamma: float) -> float:
    """Predictor of tit-for-tat teaching success on a Q-learner with discount gamma"""
    a, b, c, d = game.a, game.b, game.c, game.d
    return a + b + gamma * (a + c) - (c + d + gamma * (b + d))


def teaching_game_from_dict(data: Dict[str, Any]) -> TeachingGame:
    """Parse {a, b, c, d, teacher?, target?, u?, names?}"""
    try:
        entries = {key: float(data[key]) for key in ('a', 'b', 'c', 'd')}
    except KeyError as e:
        raise ConfigError(f'Missing payoff entry {e} in teaching game') from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f'Invalid teaching game entry: {str(e)}') from e

    student_names = tuple(data.get('student_names', ('Coop', 'Defect')))
    teacher_names = tuple(data.get('teacher_names', ('Coop', 'Defect')))
    target = data.get('target', 0)
    if isinstance(target, str):
        if target not in student_names:
            raise ConfigError(f'target {target!r} is not one of {student_names}')
        target = student_names.index(target)

    teacher = data.get('teacher')
    u = data.get('u')
    return TeachingGame(
        **entries,
        teacher=tuple(float(x) for x in teacher) if teacher is not None else None,
        target_action=int(target),
        u=tuple(float(x) for x in u) if u is not None else None,
        student_names=student_names,
        teacher_names=teacher_names,
    )


def teaching_game_to_dict(game: TeachingGame) -> Dict[str, Any]:
    data = {'a': game.a, 'b': game.b, 'c': game.c, 'd': game.d,
            'target': game.student_names[game.target_action], 'u': list(game.u),
            'student_names': list(game.student_names), 'teacher_names': list(game.teacher_names)}
    if game.teacher is not None:
        data['teacher'] = list(game.teacher)
    return data


def load_teaching_game(path: str) -> TeachingGame:
    try:
        with open(path, 'r') as f:
            return teaching_game_from_dict(json.load(f))
    except FileNotFoundError as e:
        raise ConfigError(f'Teaching game file not found: {path}') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'Teaching game file {path} is not valid JSON: {str(e)}') from e


def teaching_pd() -> TeachingGame:
    """The prisoner's dilemma used throughout the teaching experiments"""
    return TeachingGame(10, -13, 13, -6, teacher=(10, 13, -13, -6))


def move_rest_pd() -> TeachingGame:
    """Two agents paid to move an object; resting while the other moves pays best"""
    return TeachingGame(5, -10, 10, 0, teacher=(5, 10, -10, 0),
                        student_names=('Move', 'Rest'), teacher_names=('Move', 'Rest'))


def block_pushing() -> TeachingGame:
    """Coordination game where each agent prefers the other to push hard"""
    return TeachingGame(3, 2, 6, 1, teacher=(3, 6, 2, 1),
                        student_names=('hard', 'gentle'), teacher_names=('hard', 'gentle'))

