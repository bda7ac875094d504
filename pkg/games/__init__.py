from games.core import (
    JointAction,
    MatrixGame,
    ZeroSumGame,
    best_responses,
    efficient_solutions,
    payoff,
    project,
    punishment_benefit,
    transpose,
    validate_k_person,
)
from games.errors import (
    BoundsError,
    ConfigError,
    DomainError,
    MissingPolicyError,
    PcmasError,
    StateTrackingError,
)
from games.io import game_from_dict, game_to_dict, load_game, load_matrix_game, matrix_game_from_dict, save_game
