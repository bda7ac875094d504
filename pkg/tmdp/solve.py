"""
Value iteration and policy evaluation for the teacher MDP
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import sparse

from config import config
from games.errors import DomainError
from tmdp.model import TmdpModel

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100_000


@dataclass(eq=False)
class PolicySolution:
    V: np.ndarray
    policy: np.ndarray
    gamma0: float
    residual: float
    residuals: List[float] = field(default_factory=list)

    @property
    def sweeps(self) -> int:
        return len(self.residuals)


def _check_discount(gamma0: float, tol: float) -> None:
    if not 0.0 <= gamma0 < 1.0:
        raise DomainError(f'gamma0 must lie in [0, 1), got {gamma0}')
    if not tol > 0:
        raise DomainError(f'tolerance must be positive, got {tol}')


def _bound(gamma0: float, delta: float) -> float:
    # sup-norm distance to the fixed point implied by one sweep's change
    return gamma0 / (1.0 - gamma0) * delta if gamma0 > 0 else 0.0


def _backup(model: TmdpModel, V: np.ndarray, gamma0: float) -> np.ndarray:
    return np.stack([model.reward + gamma0 * (P @ V) for P in model.transitions])


def value_iteration(model: TmdpModel, gamma0: Optional[float] = None,
                    tol: Optional[float] = None) -> PolicySolution:
    """
    V(s) = U(s) + gamma0 * max_a sum_s' P(s, s', a) V(s'), iterated from V = 0 until the
    implied sup-norm error drops below tol. Ties in the policy go to the lowest action.
    """
    gamma0 = config.TMDP_GAMMA0 if gamma0 is None else gamma0
    tol = config.TMDP_TOL if tol is None else tol
    _check_discount(gamma0, tol)

    V = np.zeros(model.n_states)
    residuals = []
    for sweep in range(1, MAX_SWEEPS + 1):
        V_new = _backup(model, V, gamma0).max(axis=0)
        delta = float(np.max(np.abs(V_new - V)))
        V = V_new
        residuals.append(_bound(gamma0, delta))
        if sweep % 500 == 0:
            logger.info(f"Value iteration sweep {sweep}: residual {residuals[-1]:.3e}")
        if residuals[-1] < tol:
            break
    else:
        logger.warning(f"Value iteration stopped after {MAX_SWEEPS} sweeps at residual {residuals[-1]:.3e}")

    # argmax returns the first maximum
    policy = _backup(model, V, gamma0).argmax(axis=0)
    logger.info(f"Value iteration converged in {len(residuals)} sweeps (residual {residuals[-1]:.3e}, "
                f"gamma0={gamma0})")
    return PolicySolution(V=V, policy=policy, gamma0=gamma0, residual=residuals[-1], residuals=residuals)


def policy_matrix(model: TmdpModel, policy: np.ndarray) -> sparse.csr_matrix:
    """Transition matrix of the Markov chain induced by a state policy"""
    policy = np.asarray(policy)
    if policy.shape != (model.n_states,):
        raise DomainError(f'policy must assign an action to each of {model.n_states} states')
    if policy.min() < 0 or policy.max() >= model.n_actions:
        raise DomainError('policy contains an action outside the teacher action set')
    chosen = [sparse.diags((policy == a).astype(float)) @ P for a, P in enumerate(model.transitions)]
    return sum(chosen[1:], chosen[0]).tocsr()


def evaluate_policy(model: TmdpModel, policy, gamma0: Optional[float] = None,
                    tol: Optional[float] = None) -> np.ndarray:
    """
    Value of a fixed state policy by iterating V = U + gamma0 * P_pi V.
    Accepts an action array or a teacher strategy whose action depends only on the
    student's q-values; history-dependent teachers raise TypeError.
    """
    gamma0 = config.TMDP_GAMMA0 if gamma0 is None else gamma0
    tol = config.TMDP_TOL if tol is None else tol
    _check_discount(gamma0, tol)

    if hasattr(policy, 'state_dependent'):
        if not policy.state_dependent:
            raise TypeError(f'{policy.name} is history-dependent and has no state policy; '
                            f'estimate its value with mc_value instead')
        q1, q2 = model.grid.mesh()
        policy = np.array([policy.action_for_q(x, y, model.T) for x, y in zip(q1, q2)])

    P = policy_matrix(model, policy)
    V = np.zeros(model.n_states)
    for _ in range(MAX_SWEEPS):
        V_new = model.reward + gamma0 * (P @ V)
        delta = float(np.max(np.abs(V_new - V)))
        V = V_new
        if _bound(gamma0, delta) < tol:
            break
    return V
