"""
Game file I/O
JSON objects with `rows`, `cols` and a row-major `payoffs` array
"""
import json
import logging
import os
from typing import Any, Dict, Union

import numpy as np

from games.core import MatrixGame, ZeroSumGame
from games.errors import ConfigError

logger = logging.getLogger(__name__)


def _shape(data: Dict[str, Any]) -> tuple[int, int]:
    try:
        rows, cols = int(data['rows']), int(data['cols'])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f'game needs integer rows and cols: {str(e)}') from e
    if rows < 1 or cols < 1:
        raise ConfigError(f'game must have rows >= 1 and cols >= 1, got {rows}x{cols}')
    if 'payoffs' not in data:
        raise ConfigError('Missing payoffs in game')
    return rows, cols


def game_from_dict(data: Dict[str, Any]) -> Union[MatrixGame, ZeroSumGame]:
    """Parse a game object; single-number payoffs give a ZeroSumGame"""
    rows, cols = _shape(data)
    try:
        values = np.array(data['payoffs'], dtype=float)
    except (TypeError, ValueError) as e:
        raise ConfigError(f'Invalid payoffs format: {str(e)}') from e
    if values.size == rows * cols:
        return ZeroSumGame(values.reshape(rows, cols))
    if values.size == rows * cols * 2:
        values = values.reshape(rows, cols, 2)
        return MatrixGame(values[:, :, 0], values[:, :, 1])
    raise ConfigError(f'Expected {rows * cols} payoff cells, got array of size {values.size}')


def matrix_game_from_dict(data: Dict[str, Any]) -> MatrixGame:
    game = game_from_dict(data)
    if not isinstance(game, MatrixGame):
        raise ConfigError('Expected a two-person game with [p1, p2] payoff pairs')
    return game


def game_to_dict(game: Union[MatrixGame, ZeroSumGame]) -> Dict[str, Any]:
    if isinstance(game, ZeroSumGame):
        return {'rows': game.rows, 'cols': game.cols, 'payoffs': game.payoffs.ravel().tolist()}
    pairs = np.stack([game.p1, game.p2], axis=-1).reshape(-1, 2)
    return {'rows': game.rows, 'cols': game.cols, 'payoffs': pairs.tolist()}


def load_game(path: str) -> Union[MatrixGame, ZeroSumGame]:
    """Load a game file"""
    logger.debug(f"Loading game from {path}")
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f'Game file not found: {path}') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'Game file {path} is not valid JSON: {str(e)}') from e
    return game_from_dict(data)


def load_matrix_game(path: str) -> MatrixGame:
    game = load_game(path)
    if not isinstance(game, MatrixGame):
        raise ConfigError(f'{path} holds a zero-sum game; a two-person game is required')
    return game


def save_game(game: Union[MatrixGame, ZeroSumGame], path: str) -> None:
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w') as f:
        json.dump(game_to_dict(game), f, indent=2)
    logger.debug(f"Game saved to {path}")
