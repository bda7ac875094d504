"""
Teacher strategies
Fixed, reciprocating, delayed, learning and policy-driven teachers for teaching sessions
"""
import logging
from dataclasses import dataclass, replace
from typing import Any, List, Optional, Tuple

import numpy as np

from games.errors import ConfigError, StateTrackingError
from learning.learners import COOP, DEFECT, BqlState, QlState

logger = logging.getLogger(__name__)


class TeacherStrategy:
    """Base class: `act` picks the teacher action for iteration n, `observe` sees the outcome"""
    name = 'teacher'
    # True when the action depends only on the student's q-values (and T)
    state_dependent = False

    def act(self, log, n: int, rng: np.random.Generator, T: float) -> int:
        raise NotImplementedError

    def observe(self, student_action: int, teacher_action: int,
                student_reward: float, teacher_reward: float) -> None:
        pass

    def action_for_q(self, q1: float, q2: float, T: float) -> int:
        raise TypeError(f'{self.name} depends on the play history, not on the student q-values')


class FixedAction(TeacherStrategy):
    state_dependent = True

    def __init__(self, action: int):
        if action not in (0, 1):
            raise ConfigError(f'teacher action must be 0 or 1, got {action}')
        self.action = action
        self.name = f'fixed:{"I" if action == 0 else "II"}'

    def act(self, log, n, rng, T):
        return self.action

    def action_for_q(self, q1, q2, T):
        return self.action


class TitForTat(TeacherStrategy):
    """Opens with Coop, then repeats the student's previous action"""
    name = 'tft'

    def act(self, log, n, rng, T):
        if n == 0:
            return COOP
        return log.student_actions[n - 1]


class TwoTitsForTat(TeacherStrategy):
    """Defects only after two consecutive student defections"""
    name = '2tft'

    def act(self, log, n, rng, T):
        if n < 2:
            return COOP
        if log.student_actions[n - 1] == DEFECT and log.student_actions[n - 2] == DEFECT:
            return DEFECT
        return COOP


class DelayedSwitch(TeacherStrategy):
    """Plays `before` for the first K iterations, `after` from then on"""

    def __init__(self, delay: int, before: int = 1, after: int = 0):
        if delay < 0:
            raise ConfigError(f'delay must be non-negative, got {delay}')
        self.delay, self.before, self.after = delay, before, after
        self.name = f'delayed:{delay}'

    def act(self, log, n, rng, T):
        return self.before if n < self.delay else self.after


class LearnerTeacher(TeacherStrategy):
    """A learner of the student's kind, rewarded by the teacher payoffs"""

    def __init__(self, learner):
        self.learner = learner
        self.name = f'learner:{learner.kind}'

    def act(self, log, n, rng, T):
        return self.learner.act(T, rng)

    def observe(self, student_action, teacher_action, student_reward, teacher_reward):
        self.learner.learn(teacher_action, student_action, teacher_reward)


class PolicyTeacher(TeacherStrategy):
    """
    Follows a solved teaching policy. The student's q-values are tracked exactly by
    replaying its blind Q-learning update; they are snapped to the grid only for lookup.
    """
    name = 'optimal'
    state_dependent = True

    def __init__(self, policy, student: Optional[Any] = None,
                 alpha: float = 0.1, initial_q: Tuple[float, float] = (0.0, 0.0)):
        if student is not None and getattr(student, 'kind', None) != 'bql':
            raise StateTrackingError('the optimal teacher can only track a blind Q-learner')
        self.policy = policy
        self.tracker = BqlState(q=list(initial_q), alpha=alpha)

    @property
    def q(self) -> Tuple[float, float]:
        return self.tracker.q_values()

    def act(self, log, n, rng, T):
        q1, q2 = self.q
        return self.action_for_q(q1, q2, T)

    def action_for_q(self, q1, q2, T):
        return int(self.policy.lookup(q1, q2, T))

    def observe(self, student_action, teacher_action, student_reward, teacher_reward):
        self.tracker.learn(student_action, teacher_action, student_reward)


@dataclass(frozen=True)
class TeacherSpec:
    """Recipe for a fresh teacher, parsed from `tft|2tft|fixed:I|fixed:II|learner|optimal|delayed:K`"""
    kind: str
    action: Optional[int] = None
    delay: int = 0
    before: int = 1
    after: int = 0
    policy: Any = None
    alpha: Optional[float] = None
    gamma: Optional[float] = None

    def with_policy(self, policy) -> 'TeacherSpec':
        return replace(self, policy=policy)

    def describe(self) -> str:
        if self.kind == 'fixed':
            return f'fixed:{"I" if self.action == 0 else "II"}'
        if self.kind == 'delayed':
            return f'delayed:{self.delay}'
        return self.kind

    def build(self, game, student, rng: np.random.Generator) -> TeacherStrategy:
        if self.kind == 'fixed':
            return FixedAction(self.action)
        if self.kind == 'tft':
            return TitForTat()
        if self.kind == '2tft':
            return TwoTitsForTat()
        if self.kind == 'delayed':
            return DelayedSwitch(self.delay, self.before, self.after)
        if self.kind == 'learner':
            if not game.has_teacher_payoffs:
                raise ConfigError('a learning teacher needs teacher payoffs in the game')
            alpha = self.alpha if self.alpha is not None else student.alpha
            gamma = self.gamma if self.gamma is not None else student.gamma
            if student.kind == 'bql':
                return LearnerTeacher(BqlState(alpha=alpha))
            return LearnerTeacher(QlState.start(rng, memory=student.memory, alpha=alpha, gamma=gamma))
        if self.kind == 'optimal':
            if self.policy is None:
                raise ConfigError('the optimal teacher needs a solved policy or policy bank')
            if student.kind != 'bql':
                raise StateTrackingError('the optimal teacher can only track a blind Q-learner')
            return PolicyTeacher(self.policy, alpha=student.alpha, initial_q=tuple(student.initial_q))
        raise ConfigError(f'Unknown teacher kind {self.kind!r}')


TEACHER_KINDS: List[str] = ['tft', '2tft', 'fixed:I', 'fixed:II', 'learner', 'optimal', 'delayed:K']


def parse_teacher(text: str) -> TeacherSpec:
    """Parse a teacher name; `delayed:K:before:after` overrides the default II-then-I switch"""
    kind, _, rest = text.strip().partition(':')
    if kind in ('tft', '2tft', 'learner', 'optimal') and not rest:
        return TeacherSpec(kind)
    if kind == 'fixed':
        if rest not in ('I', 'II'):
            raise ConfigError(f"fixed teacher takes 'I' or 'II', got {rest!r}")
        return TeacherSpec('fixed', action=0 if rest == 'I' else 1)
    if kind == 'delayed':
        parts = rest.split(':')
        try:
            delay = int(parts[0])
            if len(parts) == 3:
                return TeacherSpec('delayed', delay=delay, before=int(parts[1]), after=int(parts[2]))
            if len(parts) == 1:
                return TeacherSpec('delayed', delay=delay)
        except ValueError as e:
            raise ConfigError(f'Invalid delayed teacher {text!r}: {str(e)}') from e
        raise ConfigError(f'Invalid delayed teacher {text!r}')
    raise ConfigError(f"Unknown teacher {text!r}; use one of {', '.join(TEACHER_KINDS)}")


def teacher_act(strategy: TeacherStrategy, log, n: int,
                rng: Optional[np.random.Generator] = None, T: float = 1.0) -> int:
    """Teacher action at iteration n given the session so far"""
    return strategy.act(log, n, rng, T)
