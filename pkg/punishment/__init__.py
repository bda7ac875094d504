from punishment.design import (
    DeterrenceReport,
    LawRow,
    PunishmentPlan,
    best_social_law,
    deterrence_report,
    expected_malicious_payoff,
    incentive,
    law_report,
    punishment_margin,
    punishment_plan,
)
from punishment.solver import MixedStrategy, ZeroSumSolution, guaranteed_payoff, solve_zero_sum
