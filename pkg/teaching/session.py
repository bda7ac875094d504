"""
Teaching sessions
A student and a teacher repeatedly play a 2x2 teaching game
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from games.errors import ConfigError
from learning.learners import COOP, BqlState, QlState
from learning.schedules import TemperatureSchedule
from rng import make_rng
from teaching.games import TeachingGame

logger = logging.getLogger(__name__)


@dataclass
class SessionLog:
    student_actions: List[int] = field(default_factory=list)
    teacher_actions: List[int] = field(default_factory=list)
    student_rewards: List[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.student_actions)

    def append(self, student_action: int, teacher_action: int, student_reward: float) -> None:
        self.student_actions.append(student_action)
        self.teacher_actions.append(teacher_action)
        self.student_rewards.append(student_reward)

    @property
    def coop_rate(self) -> float:
        return self.rate(COOP)

    def rate(self, action: int, iterations: Optional[int] = None) -> float:
        """Fraction of the first `iterations` student actions equal to `action`"""
        actions = self.student_actions[:iterations] if iterations else self.student_actions
        if not actions:
            return 0.0
        return actions.count(action) / len(actions)

    def window_rates(self, window: int, action: int = COOP) -> List[Tuple[int, float]]:
        """(window start, rate) over consecutive windows of the session"""
        actions = np.array(self.student_actions)
        return [(start, float(np.mean(actions[start:start + window] == action)))
                for start in range(0, len(actions), window)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'iteration': np.arange(len(self)),
            'student_action': self.student_actions,
            'teacher_action': self.teacher_actions,
            'student_reward': self.student_rewards,
        })


@dataclass(frozen=True)
class StudentSpec:
    """Recipe for a fresh student; QL draws its initial state from the session RNG"""
    kind: str = 'bql'
    alpha: float = 0.1
    gamma: float = 0.9
    memory: int = 1
    initial_q: Tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ('bql', 'ql'):
            raise ConfigError(f"student kind must be 'bql' or 'ql', got {self.kind!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f'alpha must lie in [0, 1], got {self.alpha}')

    def build(self, rng: np.random.Generator):
        if self.kind == 'bql':
            return BqlState(q=list(self.initial_q), alpha=self.alpha)
        return QlState.start(rng, memory=self.memory, alpha=self.alpha, gamma=self.gamma)


def play(student, teacher, game: TeachingGame, iterations: int,
         schedule: TemperatureSchedule, rng: np.random.Generator) -> SessionLog:
    """Run a session between already-built agents"""
    student_payoffs = game.student_payoffs.tolist()
    teacher_payoffs = game.teacher_payoffs.tolist() if game.has_teacher_payoffs else None
    log = SessionLog()
    for n in range(iterations):
        T = schedule.temperature_at(n)
        a_s = student.act(T, rng)
        a_t = teacher.act(log, n, rng, T)
        r_s = student_payoffs[a_s][a_t]
        r_t = teacher_payoffs[a_s][a_t] if teacher_payoffs is not None else 0.0
        student.learn(a_s, a_t, r_s)
        teacher.observe(a_s, a_t, r_s, r_t)
        log.append(a_s, a_t, r_s)
    return log


def run_session(student: StudentSpec, teacher, game: TeachingGame, iterations: int,
                schedule: TemperatureSchedule, seed: int) -> SessionLog:
    """One seeded session; `teacher` is a TeacherSpec. Deterministic given seed."""
    if iterations < 1:
        raise ConfigError(f'iterations must be at least 1, got {iterations}')
    rng = make_rng(seed)
    student_agent = student.build(rng)
    teacher_agent = teacher.build(game, student, rng)
    log = play(student_agent, teacher_agent, game, iterations, schedule, rng)
    logger.debug(f"Session seed={seed} {teacher_agent.name} vs {student.kind}: coop rate {log.coop_rate:.3f}")
    return log
