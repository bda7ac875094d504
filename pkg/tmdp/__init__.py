from tmdp.grid import QGrid, snap
from tmdp.model import TmdpModel, build_tmdp, heuristic_policy
from tmdp.policy import (
    BANK_TEMPERATURES,
    PolicyBank,
    TeachingPolicy,
    load_policy_source,
    policy_filename,
    solve_bank,
    solve_policy,
    track_student,
)
from tmdp.solve import PolicySolution, evaluate_policy, policy_matrix, value_iteration
