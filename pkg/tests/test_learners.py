"""
Tests for Boltzmann selection, temperature schedules and the learners
"""
import numpy as np
import pytest

from games import ConfigError, DomainError
from learning import (
    COOP,
    DEFECT,
    BqlState,
    Decay,
    Fixed,
    QlState,
    act,
    boltzmann,
    bql_update,
    decode_state,
    encode_state,
    parse_schedule,
    ql_update,
    temperature_at,
)
from rng import make_rng


class TestBoltzmann:
    """Action probabilities"""

    def test_equal_values(self):
        assert boltzmann([0.0, 0.0], 3.0) == pytest.approx([0.5, 0.5])

    def test_unit_gap(self):
        assert boltzmann([1.0, 0.0], 1.0) == pytest.approx([0.73106, 0.26894], abs=1e-5)

    def test_low_temperature_is_stable(self):
        probs = boltzmann([10.0, -6.0], 0.01)
        assert probs[0] > 1 - 1e-12
        assert np.all(np.isfinite(probs))

    def test_sums_to_one(self):
        rng = make_rng(1)
        for _ in range(100):
            probs = boltzmann(rng.normal(scale=50, size=2), float(rng.uniform(0.01, 100)))
            assert abs(probs.sum() - 1.0) < 1e-12

    def test_limits(self):
        assert boltzmann([1.0, 0.0], 1e-3)[0] == pytest.approx(1.0)
        assert boltzmann([1.0, 0.0], 1e6) == pytest.approx([0.5, 0.5], abs=1e-6)

    @pytest.mark.parametrize('T', [0.0, -1.0])
    def test_rejects_non_positive_temperature(self, T):
        with pytest.raises(DomainError):
            boltzmann([0.0, 0.0], T)


class TestSchedules:
    """Fixed and decaying temperatures"""

    def test_decay_start(self):
        assert temperature_at(Decay(), 0) == pytest.approx(75.0)
        assert temperature_at(Decay(), 1) == pytest.approx(67.55)

    def test_decay_matches_recurrence(self):
        schedule, T = Decay(), 75.0
        for n in range(1, 50):
            T = T * 0.9 + 0.05
            assert temperature_at(schedule, n) == pytest.approx(T, rel=1e-12)

    def test_decay_converges(self):
        schedule = Decay()
        assert abs(temperature_at(schedule, 200) - 0.5) < 1e-6
        values = [temperature_at(schedule, n) for n in range(300)]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert min(values) >= 0.5

    def test_fixed(self):
        assert temperature_at(Fixed(2.5), 12345) == 2.5

    def test_invalid_schedules(self):
        with pytest.raises(DomainError):
            Fixed(0.0)
        with pytest.raises(DomainError):
            Decay(rate=1.0)

    def test_parse(self):
        assert parse_schedule('fixed:3') == Fixed(3.0)
        assert parse_schedule('decay') == Decay()
        assert parse_schedule('decay:50:0.8:0.1') == Decay(50.0, 0.8, 0.1)
        assert parse_schedule(Decay().describe()) == Decay()

    @pytest.mark.parametrize('text', ['cool', 'fixed:hot', 'decay:1:2'])
    def test_parse_errors(self, text):
        with pytest.raises(ConfigError):
            parse_schedule(text)


class TestBlindQLearner:
    """q(a) updates"""

    def test_first_reward(self):
        assert bql_update(BqlState(), COOP, 10.0).q == pytest.approx([1.0, 0.0])

    def test_second_reward(self):
        assert bql_update(BqlState(q=[1.0, 0.0]), COOP, -13.0).q == pytest.approx([-0.4, 0.0])

    def test_zero_learning_rate(self):
        state = BqlState(q=[2.0, -3.0], alpha=0.0)
        assert bql_update(state, DEFECT, 100.0).q == [2.0, -3.0]

    def test_update_does_not_mutate(self):
        state = BqlState()
        bql_update(state, COOP, 10.0)
        assert state.q == [0.0, 0.0]

    def test_values_stay_in_payoff_hull(self):
        # 1000 learners x 1000 steps, the same update applied column-wise
        rng = make_rng(4)
        learners, steps, alpha = 1000, 1000, 0.1
        actions = rng.integers(2, size=(steps, learners))
        rewards = rng.choice([10.0, -13.0, 13.0, -6.0], size=(steps, learners))
        q = np.zeros((learners, 2))
        rows = np.arange(learners)
        for t in range(steps):
            a = actions[t]
            q[rows, a] = (1.0 - alpha) * q[rows, a] + alpha * rewards[t]
            assert q.min() >= -13.0 and q.max() <= 13.0

        state = BqlState(alpha=alpha)
        for t in range(steps):
            state.learn(int(actions[t, 0]), 0, float(rewards[t, 0]))
        assert state.q_values() == pytest.approx(tuple(q[0]), abs=1e-12)


class TestStateEncoding:
    """Base-4 history indices"""

    def test_examples(self):
        assert encode_state([(COOP, COOP)], 1) == 0
        assert encode_state([(DEFECT, DEFECT)], 1) == 3
        assert encode_state([(COOP, DEFECT), (DEFECT, COOP)], 2) == 6

    def test_decode_inverts_encode(self):
        for m in (1, 2, 3):
            for index in range(4 ** m):
                assert encode_state(decode_state(index, m), m) == index

    def test_wrong_length(self):
        with pytest.raises(DomainError):
            encode_state([(COOP, COOP)], 2)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            decode_state(16, 2)


class TestQLearner:
    """Q-table backups and history states"""

    def test_first_backup(self):
        state = ql_update(QlState(), 0, COOP, 10.0, 3)
        assert state.q[0, COOP] == pytest.approx(1.0)
        assert state.current_state == 3

    def test_backup_with_successor_value(self):
        q = np.zeros((4, 2))
        q[2] = [-6.0, -7.0]
        state = ql_update(QlState(q=q), 1, DEFECT, 13.0, 2)
        assert state.q[1, DEFECT] == pytest.approx(0.76)

    def test_zero_learning_rate(self):
        state = QlState(alpha=0.0)
        assert np.array_equal(ql_update(state, 0, COOP, 10.0, 1).q, np.zeros((4, 2)))

    def test_next_state_shifts_history(self):
        state = QlState(memory=2, current_state=encode_state([(COOP, COOP), (COOP, DEFECT)], 2))
        assert state.next_state(DEFECT, COOP) == encode_state([(COOP, DEFECT), (DEFECT, COOP)], 2)

    def test_learn_moves_to_next_state(self):
        state = QlState()
        state.learn(DEFECT, DEFECT, -6.0)
        assert state.current_state == 3
        assert state.q[0, DEFECT] == pytest.approx(-0.6)

    def test_start_draws_initial_history(self):
        states = {QlState.start(make_rng(seed), memory=2).current_state for seed in range(200)}
        assert states <= set(range(16))
        assert len(states) > 8

    def test_rejects_bad_memory(self):
        with pytest.raises(DomainError):
            QlState(memory=0)

    def test_ql_update_bounds(self):
        with pytest.raises(DomainError):
            ql_update(QlState(), 0, COOP, 1.0, 4)


class TestAct:
    """Sampling actions"""

    def test_near_deterministic_choice(self):
        rng = make_rng(5)
        learner = BqlState(q=[10.0, -6.0])
        assert all(act(learner, 0.01, rng) == COOP for _ in range(100000))

    def test_one_draw_per_action(self):
        a, b = make_rng(6), make_rng(6)
        act(BqlState(), 1.0, a)
        b.random()
        assert a.random() == b.random()

    def test_frequencies(self):
        rng = make_rng(7)
        learner = BqlState(q=[1.0, 0.0])
        draws = [act(learner, 1.0, rng) for _ in range(20000)]
        assert abs(draws.count(COOP) / 20000 - 0.73106) < 0.015
