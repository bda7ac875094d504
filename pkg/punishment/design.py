"""
Punishment design for social laws
Punishing strategies, deviation incentives and deterrence thresholds
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from games.core import (
    JointAction,
    MatrixGame,
    efficient_solutions,
    payoff,
    project,
    transpose,
)
from games.errors import DomainError
from punishment.solver import MixedStrategy, solve_zero_sum

logger = logging.getLogger(__name__)

# relative slack for the strict deterrence inequality; keeps solver round-off
# from turning the boundary case into a pass
STRICT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PunishmentPlan:
    """Punishing strategies for each role and the projected-game values"""
    punish_as_p1: MixedStrategy
    punish_as_p2: MixedStrategy
    v: float
    v_prime: float

    @property
    def malicious_ceiling(self) -> Tuple[float, float]:
        """Best payoff a deviator can secure against a punisher, per punisher role"""
        return -self.v, -self.v_prime


@dataclass(frozen=True)
class DeterrenceReport:
    b: float
    b_prime: float
    e: float
    e_prime: float
    v: float
    v_prime: float
    n: int
    p_min: Optional[int]

    @property
    def impossible(self) -> bool:
        return self.p_min is None


@dataclass(frozen=True)
class LawRow:
    law: JointAction
    b: float
    b_prime: float
    e: float
    e_prime: float
    best: bool

    @property
    def incentive_sum(self) -> float:
        return self.b + self.b_prime


def punishment_plan(game: MatrixGame) -> PunishmentPlan:
    """Strategies minimizing a deviator's payoff when punishing as player 1 or player 2"""
    as_p1 = solve_zero_sum(project(game))
    as_p2 = solve_zero_sum(project(transpose(game)))
    logger.debug(f"Punishment plan: v={as_p1.value:.6g}, v'={as_p2.value:.6g}")
    return PunishmentPlan(
        punish_as_p1=as_p1.strat1,
        punish_as_p2=as_p2.strat1,
        v=as_p1.value,
        v_prime=as_p2.value,
    )


def incentive(game: MatrixGame, law: JointAction) -> Tuple[float, float]:
    """Best payoffs (b, b') a deviator gets in each role against a law-abiding opponent"""
    i, j = game.check(law)
    b = float(game.p1[:, j].max())
    b_prime = float(game.p2[i, :].max())
    return b, b_prime


def best_social_law(game: MatrixGame) -> JointAction:
    """Efficient solution with the smallest b + b'; ties go to the lexicographically first"""
    candidates = efficient_solutions(game)
    return min(candidates, key=lambda law: (sum(incentive(game, law)), law.i, law.j))


def law_report(game: MatrixGame) -> List[LawRow]:
    """Incentive accounting for every efficient solution"""
    best = best_social_law(game)
    rows = []
    for law in efficient_solutions(game):
        b, b_prime = incentive(game, law)
        e, e_prime = payoff(game, law)
        rows.append(LawRow(law=law, b=b, b_prime=b_prime, e=e, e_prime=e_prime, best=law == best))
    return rows


def expected_malicious_payoff(game: MatrixGame, law: JointAction, n: int, p: int,
                              plan: Optional[PunishmentPlan] = None) -> float:
    """Expected per-encounter payoff of a lone deviator among p punishers and n-1-p conformers"""
    if n < 2:
        raise DomainError(f'need at least 2 agents, got n={n}')
    if not 0 <= p <= n - 1:
        raise DomainError(f'punisher count must lie in [0, {n - 1}], got {p}')
    plan = plan or punishment_plan(game)
    b, b_prime = incentive(game, law)
    return ((n - 1 - p) / (2 * (n - 1))) * (b + b_prime) - (p / (2 * (n - 1))) * (plan.v + plan.v_prime)


def _deters(n: int, p: int, b_sum: float, v_sum: float, e_sum: float) -> bool:
    # cross-multiplied by (n - 1) so integer-valued games compare exactly
    lhs = (n - 1 - p) * b_sum - p * v_sum
    rhs = (n - 1) * e_sum
    slack = STRICT_TOLERANCE * max(1.0, abs(lhs), abs(rhs))
    return lhs < rhs - slack


def deterrence_report(game: MatrixGame, law: JointAction, n: int,
                      plan: Optional[PunishmentPlan] = None) -> DeterrenceReport:
    """Least punisher count making deviation strictly unprofitable, by integer scan"""
    if n < 2:
        raise DomainError(f'need at least 2 agents, got n={n}')
    plan = plan or punishment_plan(game)
    b, b_prime = incentive(game, law)
    e, e_prime = payoff(game, law)
    b_sum, v_sum, e_sum = b + b_prime, plan.v + plan.v_prime, e + e_prime

    p_min: Optional[int] = None
    if b_sum <= e_sum:
        # no deviation gains anything; the law enforces itself
        p_min = 0
    else:
        for p in range(n):
            if _deters(n, p, b_sum, v_sum, e_sum):
                p_min = p
                break

    if p_min is None:
        logger.info(f"No punisher count deters deviation from {law.one_based()} with n={n}")
    return DeterrenceReport(b=b, b_prime=b_prime, e=e, e_prime=e_prime,
                            v=plan.v, v_prime=plan.v_prime, n=n, p_min=p_min)


def punishment_margin(game: MatrixGame, law: JointAction,
                      plan: Optional[PunishmentPlan] = None) -> Tuple[float, float]:
    """
    (loss, gain) per encounter for a deviator, averaged over both roles:
    loss is the law payoff minus the punished ceiling, gain is the payoff
    over the law against a conformer.
    """
    plan = plan or punishment_plan(game)
    b, b_prime = incentive(game, law)
    e, e_prime = payoff(game, law)
    loss = (e + e_prime) / 2 + (plan.v + plan.v_prime) / 2
    gain = (b + b_prime - e - e_prime) / 2
    return loss, gain
