"""
Bundled game fixtures
Regenerates the JSON files under data/games from the in-code game definitions
"""
import json
import logging
import os
import sys

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from experiments.dif import DIF_MATRICES
from games import MatrixGame, save_game
from teaching import block_pushing, move_rest_pd, teaching_game_to_dict, teaching_pd

logger = logging.getLogger(__name__)

GAMES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'games')


def law_pd() -> MatrixGame:
    """Prisoner's dilemma with a unique efficient solution at (1, 1)"""
    return MatrixGame.from_pairs([[(2, 2), (-10, 10)], [(10, -10), (-5, -5)]])


def three_efficient() -> MatrixGame:
    """Variant with three efficient solutions and different deviation incentives"""
    return MatrixGame.from_pairs([[(0, 0), (-10, 10)], [(10, -10), (-5, -5)]])


def write_fixtures(directory: str = GAMES_DIR) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, game in (('law_pd', law_pd()), ('three_efficient', three_efficient())):
        path = os.path.join(directory, f'{name}.json')
        save_game(game, path)
        written.append(path)

    teaching = {'teaching_pd': teaching_pd(), 'move_rest_pd': move_rest_pd(), 'block_pushing': block_pushing()}
    for name, game in teaching.items():
        path = os.path.join(directory, f'{name}.json')
        with open(path, 'w') as f:
            json.dump(teaching_game_to_dict(game), f, indent=2)
        written.append(path)

    path = os.path.join(directory, 'dif_matrices.json')
    with open(path, 'w') as f:
        json.dump([list(entries) for entries in DIF_MATRICES], f)
    written.append(path)

    logger.info(f"Wrote {len(written)} fixtures to {directory}")
    return written


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO)
    for path in write_fixtures():
        print(f"Fixture saved to {path}")
