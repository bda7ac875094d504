"""
Tests for matrix games and game files
"""
import json

import numpy as np
import pytest

from games import (
    BoundsError,
    ConfigError,
    JointAction,
    MatrixGame,
    ZeroSumGame,
    best_responses,
    efficient_solutions,
    game_from_dict,
    game_to_dict,
    load_game,
    load_matrix_game,
    payoff,
    project,
    punishment_benefit,
    save_game,
    transpose,
    validate_k_person,
)


class TestMatrixGame:
    """Construction and lookup"""

    def test_payoff_lookup(self, example_pd):
        assert payoff(example_pd, JointAction(0, 0)) == (2, 2)
        assert payoff(example_pd, JointAction(1, 0)) == (10, -10)

    def test_out_of_range_joint_action(self, example_pd):
        with pytest.raises(BoundsError):
            payoff(example_pd, JointAction(2, 0))
        with pytest.raises(IndexError):
            payoff(example_pd, JointAction(0, -1))

    def test_rejects_non_finite_payoffs(self):
        with pytest.raises(ConfigError):
            MatrixGame(np.array([[np.nan]]), np.array([[0.0]]))

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ConfigError):
            MatrixGame(np.zeros((2, 2)), np.zeros((2, 3)))

    def test_payoffs_are_read_only(self, example_pd):
        with pytest.raises(ValueError):
            example_pd.p1[0, 0] = 99

    def test_one_based_round_trip(self):
        law = JointAction.from_one_based(2, 1)
        assert law == JointAction(1, 0)
        assert law.one_based() == (2, 1)


class TestEfficiency:
    """Efficient joint actions"""

    def test_unique_efficient_solution(self, example_pd):
        assert efficient_solutions(example_pd) == (JointAction(0, 0),)

    def test_three_efficient_solutions(self, example_three):
        assert set(efficient_solutions(example_three)) == {JointAction(0, 0), JointAction(0, 1), JointAction(1, 0)}

    def test_constant_game_all_cells(self):
        game = MatrixGame(np.full((2, 3), 4.0), np.full((2, 3), 4.0))
        assert len(efficient_solutions(game)) == 6


class TestDerivations:
    """Punishment/benefit, projection and transposition"""

    def test_benefit_of_deviation(self, example_pd):
        assert punishment_benefit(example_pd, JointAction(0, 0), JointAction(1, 0), 1) == -8

    def test_punishment_of_victim(self, example_pd):
        assert punishment_benefit(example_pd, JointAction(0, 0), JointAction(1, 0), 2) == 12

    def test_invalid_player(self, example_pd):
        with pytest.raises(BoundsError):
            punishment_benefit(example_pd, JointAction(0, 0), JointAction(1, 0), 3)

    def test_projection(self, example_pd, example_three):
        assert np.array_equal(project(example_pd).payoffs, [[-2, -10], [10, 5]])
        assert np.array_equal(project(example_three).payoffs, [[0, -10], [10, 5]])

    def test_symmetric_game_projects_like_its_transpose(self, example_pd):
        assert project(transpose(example_pd)) == project(example_pd)

    def test_transpose_cell_by_cell(self):
        game = MatrixGame.from_pairs([[(1, 2), (3, 4)], [(5, 6), (7, 8)]])
        swapped = transpose(game)
        for i in range(2):
            for j in range(2):
                assert payoff(swapped, JointAction(j, i)) == payoff(game, JointAction(i, j))[::-1]

    def test_transpose_twice_is_identity(self):
        game = MatrixGame.from_pairs([[(1, 2), (3, 4), (0, 1)], [(5, 6), (7, 8), (2, 2)]])
        assert transpose(transpose(game)) == game
        assert transpose(game).p1.shape == (3, 2)

    def test_best_responses(self, example_pd):
        assert best_responses(example_pd, 1, 0) == (1,)
        assert best_responses(example_pd, 2, 0) == (1,)

    def test_best_responses_ties(self):
        game = MatrixGame(np.array([[1.0, 0.0], [1.0, 2.0]]), np.zeros((2, 2)))
        assert best_responses(game, 1, 0) == (0, 1)
        assert best_responses(game, 2, 0) == (0, 1)


class TestKPerson:
    """The general k-person form check"""

    def test_three_person_game(self):
        ok, msg = validate_k_person(np.zeros((2, 2, 2, 3)))
        assert ok and msg == ''

    def test_wrong_payoff_count(self):
        ok, msg = validate_k_person(np.zeros((2, 2, 3)))
        assert not ok
        assert 'Expected 2 payoffs' in msg

    def test_non_finite(self):
        payoffs = np.zeros((2, 2, 2))
        payoffs[0, 0, 0] = np.inf
        assert validate_k_person(payoffs)[0] is False


class TestGameFiles:
    """JSON game files"""

    def test_bundled_fixture(self, example_pd):
        assert load_matrix_game('data/games/law_pd.json') == example_pd

    def test_save_and_load(self, tmp_path, example_three):
        path = tmp_path / 'games' / 'g.json'
        save_game(example_three, str(path))
        assert load_game(str(path)) == example_three

    def test_zero_sum_file(self):
        game = game_from_dict({'rows': 2, 'cols': 2, 'payoffs': [3, -1, -2, 4]})
        assert isinstance(game, ZeroSumGame)
        assert game_to_dict(game)['payoffs'] == [3, -1, -2, 4]

    def test_wrong_size(self):
        with pytest.raises(ConfigError):
            game_from_dict({'rows': 2, 'cols': 2, 'payoffs': [1, 2, 3]})

    def test_missing_fields(self):
        with pytest.raises(ConfigError):
            game_from_dict({'payoffs': [1]})

    def test_zero_sum_rejected_where_two_person_needed(self, tmp_path):
        path = tmp_path / 'zs.json'
        path.write_text(json.dumps({'rows': 1, 'cols': 1, 'payoffs': [1]}))
        with pytest.raises(ConfigError):
            load_matrix_game(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_game(str(tmp_path / 'nope.json'))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{not json')
        with pytest.raises(ConfigError):
            load_game(str(path))
