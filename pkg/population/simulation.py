"""
Population simulation of iterated two-person games
Punishing, conforming and malicious agents matched uniformly at random
"""
import json
import logging
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import pandas as pd

from config import config as settings
from games.core import JointAction, MatrixGame, best_responses
from games.errors import ConfigError
from games.io import load_matrix_game, matrix_game_from_dict
from punishment.design import PunishmentPlan, deterrence_report, punishment_plan
from rng import make_rng

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ['iter', 'agent1', 'agent2', 'action1', 'action2', 'pay1', 'pay2']


class MaliciousPolicy(str, Enum):
    EXPLOIT = 'exploit'
    RATIONAL = 'rational'


class Verdict(str, Enum):
    DEVIATES = 'deviates'
    CONFORMS = 'conforms'


class Role(str, Enum):
    PUNISHER = 'punisher'
    CONFORMER = 'conformer'
    MALICIOUS = 'malicious'


@dataclass
class PopulationConfig:
    n: int
    p: int
    c: int
    m: int
    game: MatrixGame
    law: JointAction
    malicious_policy: MaliciousPolicy = MaliciousPolicy.EXPLOIT
    mal_vs_mal_payoff: float = field(default_factory=lambda: settings.MAL_VS_MAL_PAYOFF)
    iterations: int = 1
    seed: int = 0
    trigger: str = 'global'

    def validate(self) -> None:
        """Raise ConfigError on inconsistent counts or options"""
        if min(self.p, self.c, self.m) < 0:
            raise ConfigError(f'agent counts must be non-negative: p={self.p}, c={self.c}, m={self.m}')
        if self.p + self.c + self.m != self.n:
            raise ConfigError(f'p + c + m must equal n: {self.p} + {self.c} + {self.m} != {self.n}')
        if self.n < 2:
            raise ConfigError(f'need at least 2 agents, got n={self.n}')
        if self.iterations < 1:
            raise ConfigError(f'iterations must be at least 1, got {self.iterations}')
        if self.trigger not in ('global', 'observer'):
            raise ConfigError(f"trigger must be 'global' or 'observer', got {self.trigger!r}")
        try:
            self.game.check(self.law)
        except IndexError as e:
            raise ConfigError(str(e)) from e
        self.malicious_policy = MaliciousPolicy(self.malicious_policy)

    def role_of(self, agent: int) -> Role:
        if agent < self.p:
            return Role.PUNISHER
        if agent < self.p + self.c:
            return Role.CONFORMER
        return Role.MALICIOUS


@dataclass(frozen=True)
class PopStats:
    mean_payoff: Dict[str, Optional[float]]
    encounters: Dict[str, int]
    deviations: int
    punishments: int
    participations: Tuple[int, ...] = field(repr=False)
    malicious_se: Optional[float] = None
    first_deviation: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            'mean_payoff': self.mean_payoff,
            'encounters': self.encounters,
            'deviations': self.deviations,
            'punishments': self.punishments,
            'malicious_se': self.malicious_se,
            'first_deviation': self.first_deviation,
            'participations': list(self.participations),
        }


def rational_deviation_check(config: PopulationConfig, plan: Optional[PunishmentPlan] = None) -> Verdict:
    """Ex-ante decision of a rational malicious agent: deviate unless deterred"""
    config.validate()
    report = deterrence_report(config.game, config.law, config.n, plan)
    if report.p_min is not None and config.p >= report.p_min:
        return Verdict.CONFORMS
    return Verdict.DEVIATES


def _exploit_action(game: MatrixGame, player: int, law: JointAction) -> int:
    """Best response to a law-abiding opponent; keeps the law action when it is one"""
    if player == 1:
        replies, own = best_responses(game, 1, law.j), law.i
    else:
        replies, own = best_responses(game, 2, law.i), law.j
    return own if own in replies else replies[0]


def run_population(config: PopulationConfig, trace_path: Optional[str] = None) -> PopStats:
    """
    Simulate `iterations` uniformly matched encounters under a grim trigger.
    Deterministic given config.seed.
    """
    config.validate()
    game, law, n = config.game, config.law, config.n
    plan = punishment_plan(game)
    strategies = {1: plan.punish_as_p1, 2: plan.punish_as_p2}
    law_action = {1: law.i, 2: law.j}

    deviate = True
    if config.malicious_policy == MaliciousPolicy.RATIONAL:
        deviate = rational_deviation_check(config, plan) == Verdict.DEVIATES
        logger.info(f"Rational malicious agents {'deviate' if deviate else 'conform'} (p={config.p}, n={n})")
    malicious_action = {
        player: _exploit_action(game, player, law) if deviate else law_action[player]
        for player in (1, 2)
    }

    roles = [config.role_of(k) for k in range(n)]
    p1, p2 = game.p1.tolist(), game.p2.tolist()

    rng = make_rng(config.seed)
    iters = config.iterations
    first = rng.integers(n, size=iters)
    second = rng.integers(n - 1, size=iters)
    second = second + (second >= first)
    coin = rng.random(iters) < 0.5
    draws = rng.random((iters, 2))

    global_trigger = False
    triggered = [False] * n
    sums = {role: 0.0 for role in Role}
    squares = {role: 0.0 for role in Role}
    counts = {role: 0 for role in Role}
    participations = [0] * n
    deviations = 0
    punishments = 0
    first_deviation = None
    trace: List[tuple] = []

    for t in range(iters):
        a, b = int(first[t]), int(second[t])
        agents = (a, b) if coin[t] else (b, a)
        actions = []
        for slot, agent in enumerate(agents):
            player = slot + 1
            role = roles[agent]
            if role == Role.CONFORMER:
                action = law_action[player]
            elif role == Role.PUNISHER:
                if global_trigger or triggered[agent]:
                    action = strategies[player].sample_with(draws[t, slot])
                    punishments += 1
                else:
                    action = law_action[player]
            else:
                action = malicious_action[player]
            actions.append(action)

        i, j = actions
        if roles[agents[0]] == Role.MALICIOUS and roles[agents[1]] == Role.MALICIOUS:
            pays = (config.mal_vs_mal_payoff, config.mal_vs_mal_payoff)
        else:
            pays = (p1[i][j], p2[i][j])

        for slot, agent in enumerate(agents):
            role = roles[agent]
            sums[role] += pays[slot]
            squares[role] += pays[slot] * pays[slot]
            counts[role] += 1
            participations[agent] += 1

        for slot, agent in enumerate(agents):
            if roles[agent] == Role.MALICIOUS and actions[slot] != law_action[slot + 1]:
                deviations += 1
                if first_deviation is None:
                    first_deviation = t
                    logger.info(f"First deviation at iteration {t} by agent {agent}")
                if config.trigger == 'global':
                    global_trigger = True
                else:
                    triggered[agents[1 - slot]] = True

        if trace_path is not None:
            trace.append((t, agents[0], agents[1], i + 1, j + 1, pays[0], pays[1]))

    means = {role.value: (sums[role] / counts[role] if counts[role] else None) for role in Role}
    malicious_se = None
    k = counts[Role.MALICIOUS]
    if k > 1:
        variance = (squares[Role.MALICIOUS] - k * means[Role.MALICIOUS.value] ** 2) / (k - 1)
        malicious_se = math.sqrt(max(variance, 0.0) / k)

    if trace_path is not None:
        pd.DataFrame(trace, columns=TRACE_COLUMNS).to_csv(trace_path, index=False)
        logger.info(f"Population trace saved to {trace_path}")

    return PopStats(
        mean_payoff=means,
        encounters={role.value: counts[role] for role in Role},
        deviations=deviations,
        punishments=punishments,
        participations=tuple(participations),
        malicious_se=malicious_se,
        first_deviation=first_deviation,
    )


def population_config_from_dict(data: dict, base_dir: str = '.') -> PopulationConfig:
    """
    Parse {n, p, c, m, game | game_file, law: [i, j] (1-based), policy?, iterations?,
    seed?, trigger?, mal_vs_mal_payoff?}; relative game files resolve against base_dir.
    """
    try:
        if 'game' in data:
            game = matrix_game_from_dict(data['game'])
        elif 'game_file' in data:
            game = load_matrix_game(os.path.join(base_dir, data['game_file']))
        else:
            raise ConfigError("population config needs 'game' or 'game_file'")
        i, j = data['law']
        config = PopulationConfig(
            n=int(data['n']), p=int(data['p']), c=int(data['c']), m=int(data['m']),
            game=game,
            law=JointAction.from_one_based(int(i), int(j)),
            malicious_policy=MaliciousPolicy(data.get('policy', 'exploit')),
            mal_vs_mal_payoff=float(data.get('mal_vs_mal_payoff', settings.MAL_VS_MAL_PAYOFF)),
            iterations=int(data.get('iterations', 1)),
            seed=int(data.get('seed', 0)),
            trigger=data.get('trigger', 'global'),
        )
    except ConfigError:
        raise
    except KeyError as e:
        raise ConfigError(f'Missing field {e} in population config') from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f'Invalid population config: {str(e)}') from e
    config.validate()
    return config


def load_population_config(path: str) -> PopulationConfig:
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f'Population config not found: {path}') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'Population config {path} is not valid JSON: {str(e)}') from e
    return population_config_from_dict(data, os.path.dirname(os.path.abspath(path)))
