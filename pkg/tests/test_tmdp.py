"""
Tests for the teacher MDP, its solver and teaching policy files
"""
import time

import numpy as np
import pytest
from scipy import sparse

from experiments import horizon_for, mc_values
from games import ConfigError, DomainError, MissingPolicyError
from learning import COOP, DEFECT, BqlState, Fixed
from rng import make_rng
from teaching import FixedAction, StudentSpec, TeachingGame, TitForTat, parse_teacher, play, run_session, teaching_pd
from tmdp import (
    PolicyBank,
    QGrid,
    TeachingPolicy,
    TmdpModel,
    build_tmdp,
    evaluate_policy,
    heuristic_policy,
    load_policy_source,
    policy_filename,
    snap,
    solve_policy,
    track_student,
    value_iteration,
)

SMALL_GRID = QGrid(-13.0, 13.0, 21)


def chain_model(transitions, reward) -> TmdpModel:
    """Hand-built model over a 2x2 grid (four states)"""
    grid = QGrid(0.0, 1.0, 2)
    return TmdpModel(game=teaching_pd(), grid=grid, T=1.0, alpha=0.1,
                     transitions=[sparse.csr_matrix(np.asarray(P, dtype=float)) for P in transitions],
                     reward=np.asarray(reward, dtype=float), rho=np.full((4, 2), 0.5))


@pytest.fixture(scope='module')
def small_model():
    return build_tmdp(teaching_pd(), SMALL_GRID, T=2.0, alpha=0.1)


@pytest.fixture(scope='module')
def small_solution(small_model):
    return value_iteration(small_model, gamma0=0.95, tol=1e-8)


class TestGrid:
    """Snapping q-values to cells"""

    def test_centers_snap_to_themselves(self):
        grid = QGrid(-13.0, 13.0, 40)
        q1, q2 = grid.mesh()
        assert np.array_equal(grid.state(q1, q2), np.arange(grid.n_states))

    def test_clamped(self):
        grid = QGrid()
        assert snap(13.2, 0.0, grid) == snap(13.0, 0.0, grid)
        assert snap(-99.0, 0.0, grid) == snap(-13.0, 0.0, grid)

    def test_fine_cells(self):
        grid = QGrid()
        assert grid.width == pytest.approx(0.13)
        assert snap(0.0, 0.0, grid) == snap(0.05, 0.0, grid)

    def test_midpoint_rounds_up(self):
        grid = QGrid(0.0, 4.0, 4)
        assert grid.index(1.0) == 1
        assert grid.index(0.999) == 0

    def test_state_values(self):
        grid = QGrid(0.0, 4.0, 4)
        assert grid.state_values(grid.state(2.2, 0.1)) == (2.5, 0.5)
        with pytest.raises(DomainError):
            grid.state_values(16)

    def test_invalid_grids(self):
        with pytest.raises(DomainError):
            QGrid(1.0, 1.0, 10)
        with pytest.raises(DomainError):
            QGrid(0.0, 1.0, 1)

    def test_for_game(self):
        grid = QGrid.for_game(teaching_pd(), cells=50)
        assert (grid.q_lo, grid.q_hi, grid.cells) == (-13.0, 13.0, 50)


class TestBuildTmdp:
    """Transition structure and rewards"""

    def test_rows_are_distributions(self, small_model):
        for P in small_model.transitions:
            assert np.allclose(np.asarray(P.sum(axis=1)).ravel(), 1.0, atol=1e-12)

    def test_at_most_two_successors(self, small_model):
        for P in small_model.transitions:
            assert np.diff(P.indptr).max() <= 2

    def test_reward_bounds(self, small_model):
        assert small_model.reward.min() >= 0.0
        assert small_model.reward.max() <= 1.0

    def test_successors_from_origin(self):
        grid = QGrid(-13.0, 13.0, 201)
        model = build_tmdp(teaching_pd(), grid, T=1.0, alpha=0.1)
        origin = snap(0.0, 0.0, grid)
        successors = dict(model.successors(origin, COOP))
        assert set(successors) == {snap(1.0, 0.0, grid), snap(0.0, 1.3, grid)}
        assert successors[snap(1.0, 0.0, grid)] == pytest.approx(0.5)
        assert successors[snap(0.0, 1.3, grid)] == pytest.approx(0.5)
        assert model.reward[origin] == pytest.approx(0.5)

    def test_rejects_bad_temperature(self):
        with pytest.raises(DomainError):
            build_tmdp(teaching_pd(), SMALL_GRID, T=0.0)

    def test_rejects_negative_valuation(self):
        with pytest.raises(ConfigError):
            build_tmdp(teaching_pd(), SMALL_GRID, T=1.0, u=(1.0, -1.0))

    def test_heuristics(self, small_model):
        assert heuristic_policy(small_model, 'coop').sum() == 0
        assert (heuristic_policy(small_model, 'defect') == 1).all()
        assert np.array_equal(heuristic_policy(small_model, 'random', seed=3),
                              heuristic_policy(small_model, 'random', seed=3))
        with pytest.raises(ConfigError):
            heuristic_policy(small_model, 'greedy')


class TestValueIteration:
    """Optimal teacher values"""

    def test_zero_reward(self, small_model):
        model = TmdpModel(game=small_model.game, grid=small_model.grid, T=small_model.T,
                          alpha=small_model.alpha, transitions=small_model.transitions,
                          reward=np.zeros(small_model.n_states), rho=small_model.rho)
        solution = value_iteration(model, gamma0=0.9, tol=1e-6)
        assert np.all(solution.V == 0)

    def test_absorbing_state(self):
        stay = np.eye(4)
        solution = value_iteration(chain_model([stay, stay], np.ones(4)), gamma0=0.9, tol=1e-9)
        assert solution.V == pytest.approx(np.full(4, 10.0), abs=1e-8)
        assert (solution.policy == 0).all()

    def test_against_finite_horizon(self):
        move = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 1]]
        split = [[0.5, 0, 0.5, 0], [0, 0.5, 0.5, 0], [0.2, 0, 0, 0.8], [0, 0, 0, 1]]
        reward = [0.0, 0.3, 1.0, 0.1]
        gamma0, tol = 0.9, 1e-8
        solution = value_iteration(chain_model([move, split], reward), gamma0=gamma0, tol=tol)

        P = [np.array(move, dtype=float), np.array(split, dtype=float)]
        V = np.zeros(4)
        for _ in range(200):
            V = np.max([np.array(reward) + gamma0 * (Pa @ V) for Pa in P], axis=0)
        assert np.max(np.abs(solution.V - V)) <= tol + gamma0 ** 200 / (1 - gamma0)

    def test_residuals_never_increase(self, small_solution):
        residuals = small_solution.residuals
        assert all(b <= a + 1e-12 for a, b in zip(residuals, residuals[1:]))
        assert small_solution.residual < 1e-8
        assert small_solution.sweeps == len(residuals)

    def test_rejects_undiscounted(self, small_model):
        with pytest.raises(DomainError):
            value_iteration(small_model, gamma0=1.0)


class TestEvaluatePolicy:
    """Fixed-policy values against the optimum"""

    def test_optimal_policy_value(self, small_model, small_solution):
        V = evaluate_policy(small_model, small_solution.policy, gamma0=0.95, tol=1e-8)
        assert np.max(np.abs(V - small_solution.V)) < 1e-6

    @pytest.mark.parametrize('kind', ['coop', 'defect', 'random'])
    def test_heuristics_are_dominated(self, small_model, small_solution, kind):
        V = evaluate_policy(small_model, heuristic_policy(small_model, kind), gamma0=0.95, tol=1e-8)
        assert np.all(V <= small_solution.V + 2e-8)

    def test_state_dependent_strategy(self, small_model):
        by_strategy = evaluate_policy(small_model, FixedAction(DEFECT), gamma0=0.9, tol=1e-8)
        by_array = evaluate_policy(small_model, heuristic_policy(small_model, 'defect'), gamma0=0.9, tol=1e-8)
        assert np.array_equal(by_strategy, by_array)

    def test_history_dependent_strategy_rejected(self, small_model):
        with pytest.raises(TypeError):
            evaluate_policy(small_model, TitForTat(), gamma0=0.9)

    def test_rejects_partial_policy(self, small_model):
        with pytest.raises(DomainError):
            evaluate_policy(small_model, np.zeros(3, dtype=int), gamma0=0.9)


class TestPolicyFiles:
    """Binary policy files and banks"""

    @pytest.fixture(scope='class')
    def policy(self):
        return solve_policy(teaching_pd(), SMALL_GRID, T=2.0, alpha=0.1, gamma0=0.9, tol=1e-6)

    def test_round_trip(self, tmp_path, policy):
        path = str(tmp_path / policy_filename(2.0))
        policy.save(path)
        loaded = TeachingPolicy.load(path)
        assert loaded.grid == policy.grid
        assert (loaded.T, loaded.gamma0, loaded.alpha) == (2.0, 0.9, 0.1)
        assert np.array_equal(loaded.actions, policy.actions)
        assert np.array_equal(loaded.V, policy.V)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingPolicyError, match='tmdp solve'):
            TeachingPolicy.load(str(tmp_path / 'none.bin'))

    def test_bad_magic(self, tmp_path, policy):
        path = tmp_path / 'p.bin'
        policy.save(str(path))
        raw = path.read_bytes()
        path.write_bytes(b'NOTAPOLI' + raw[8:])
        with pytest.raises(ConfigError):
            TeachingPolicy.load(str(path))

    def test_truncated(self, tmp_path, policy):
        path = tmp_path / 'p.bin'
        policy.save(str(path))
        path.write_bytes(path.read_bytes()[:-8])
        with pytest.raises(ConfigError):
            TeachingPolicy.load(str(path))

    def test_lookup_matches_value(self, policy):
        state = SMALL_GRID.state(2.0, -3.0)
        assert policy.lookup(2.0, -3.0) == policy.actions[state]
        assert policy.value_at(2.0, -3.0) == policy.V[state]


class TestPolicyBank:
    """Nearest-temperature selection"""

    @staticmethod
    def policy_at(T: float, action: int) -> TeachingPolicy:
        grid = QGrid(0.0, 1.0, 2)
        return TeachingPolicy(grid=grid, T=T, gamma0=0.9, alpha=0.1,
                              actions=np.full(4, action), V=np.zeros(4))

    def test_nearest_in_log_space(self):
        bank = PolicyBank([self.policy_at(50.0, 0), self.policy_at(0.5, 1), self.policy_at(5.0, 0)])
        assert bank.temperatures == [0.5, 5.0, 50.0]
        assert bank.select(2.0).T == 5.0
        assert bank.select(1.2).T == 0.5
        assert bank.select(1000.0).T == 50.0
        assert bank.lookup(0.2, 0.2, T=0.6) == 1

    def test_lookup_needs_temperature(self):
        bank = PolicyBank([self.policy_at(1.0, 0)])
        with pytest.raises(ConfigError):
            bank.lookup(0.0, 0.0)

    def test_save_and_load(self, tmp_path):
        bank = PolicyBank([self.policy_at(T, 0) for T in (0.5, 3.0, 75.0)])
        bank.save(str(tmp_path))
        loaded = load_policy_source(str(tmp_path))
        assert isinstance(loaded, PolicyBank)
        assert loaded.temperatures == [0.5, 3.0, 75.0]
        single = load_policy_source(str(tmp_path / policy_filename(3.0)))
        assert isinstance(single, TeachingPolicy)

    def test_empty_directory(self, tmp_path):
        with pytest.raises(MissingPolicyError):
            PolicyBank.load(str(tmp_path))


class TestTrackStudent:
    """Replaying the student's updates"""

    def test_empty_stream(self):
        assert track_student((0.5, -1.0), 0.1, []) == (0.5, -1.0)

    def test_one_observation(self):
        assert track_student((0.0, 0.0), 0.1, [(COOP, 10.0)]) == pytest.approx((1.0, 0.0))

    def test_matches_live_student(self):
        game = teaching_pd()
        student = BqlState(alpha=0.1)
        log = play(student, FixedAction(COOP), game, 500, Fixed(2.0), make_rng(10))
        tracked = track_student((0.0, 0.0), 0.1, zip(log.student_actions, log.student_rewards))
        assert tracked == student.q_values()


class TestOptimalTeacherSessions:
    """Sessions driven by a solved policy"""

    def test_policy_teacher_session(self):
        policy = solve_policy(teaching_pd(), SMALL_GRID, T=1.0, alpha=0.1, gamma0=0.9, tol=1e-6)
        spec = parse_teacher('optimal').with_policy(policy)
        log = run_session(StudentSpec(), spec, teaching_pd(), 300, Fixed(1.0), seed=11)
        assert len(log) == 300
        assert set(log.teacher_actions) <= {COOP, DEFECT}

    def test_values_at_least_immediate_reward(self):
        # V = U + gamma0 * (non-negative continuation)
        game = TeachingGame(10, 10, 0, 0)
        model = build_tmdp(game, QGrid.for_game(game, cells=11), T=1.0)
        solution = value_iteration(model, gamma0=0.9, tol=1e-8)
        assert np.all(solution.V >= model.reward - 1e-12)


@pytest.mark.slow
class TestPolicyAccuracy:
    """Solved values against Monte-Carlo rollouts of the optimal teacher"""

    def test_full_grid_solves_in_minutes(self):
        start = time.perf_counter()
        solve_policy(teaching_pd(), QGrid(-13.0, 13.0, 200), T=1.0, alpha=0.1, gamma0=0.99, tol=1e-6)
        assert time.perf_counter() - start < 300

    def test_finer_grids_stay_close_to_rollouts(self):
        bands, errors = {}, {}
        for cells in (100, 200, 400):
            policy = solve_policy(teaching_pd(), QGrid(-13.0, 13.0, cells), T=1.0, alpha=0.1, gamma0=0.99, tol=1e-6)
            v0 = policy.V[int(policy.grid.state(0.0, 0.0))]
            values = mc_values(parse_teacher('optimal').with_policy(policy), StudentSpec(), teaching_pd(),
                               0.99, horizon_for(0.99, 1e-3), 10000, seed=cells)
            bands[cells] = abs(v0 - values.mean())
            errors[cells] = values.std(ddof=1) / np.sqrt(len(values))
        assert bands[400] <= bands[100] + 3 * (errors[100] + errors[400])
        assert all(band < 2.0 for band in bands.values())
