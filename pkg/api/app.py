from flask import Flask, request, jsonify
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address
import numpy as np
import os
import sys
import logging
from datetime import datetime
from typing import Dict, Any, Optional
import traceback

# Add parent directory to path for config import
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import config
from games import JointAction, MatrixGame, PcmasError, matrix_game_from_dict
from punishment import deterrence_report, law_report, punishment_margin, punishment_plan
from teaching import TeachingGame, classify, dif, teaching_game_from_dict
from tmdp import load_policy_source

VERSION = '1.0.0'

# Initialize Flask app
app = Flask(__name__)
app.config['SECRET_KEY'] = config.SECRET_KEY

# Set up rate limiting
limiter = Limiter(
    app=app,
    key_func=get_remote_address,
    default_limits=["2000 per day", "200 per hour"]
)

# Configure logging
os.makedirs(config.LOG_DIR, exist_ok=True)
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.FileHandler(os.path.join(config.LOG_DIR, 'api.log')),
        logging.StreamHandler()
    ]
)
logger = logging.getLogger(__name__)

# Validate configuration
config_errors = config.validate()
if config_errors:
    for error in config_errors:
        logger.error(f"Configuration error: {error}")
    if config.is_production:
        raise RuntimeError("Configuration validation failed in production")


def validate_game_input(data: Dict[str, Any]) -> tuple[bool, str, Optional[MatrixGame]]:
    """Validate a two-person game and return status, error message, and game"""
    if not data or 'game' not in data:
        return False, 'Missing game in request', None
    if not isinstance(data['game'], dict):
        return False, 'game must be an object with rows, cols and payoffs', None

    try:
        game = matrix_game_from_dict(data['game'])
    except PcmasError as e:
        return False, str(e), None

    if max(game.rows, game.cols) > config.MAX_GAME_ACTIONS:
        return False, f'Games are limited to {config.MAX_GAME_ACTIONS} actions per player', None

    return True, '', game


def validate_law_input(data: Dict[str, Any], game: MatrixGame) -> tuple[bool, str, Optional[JointAction]]:
    """Validate a 1-based joint action [i, j] against the game"""
    law = data.get('law')
    if not isinstance(law, list) or len(law) != 2:
        return False, 'law must be a list [i, j] of 1-based actions', None
    try:
        law = JointAction.from_one_based(int(law[0]), int(law[1]))
        game.check(law)
    except (TypeError, ValueError) as e:
        return False, f'Invalid law: {str(e)}', None
    except IndexError as e:
        return False, str(e), None
    return True, '', law


def validate_population_size(data: Dict[str, Any]) -> tuple[bool, str, Optional[int]]:
    try:
        n = int(data.get('n'))
    except (TypeError, ValueError):
        return False, 'n must be an integer', None
    if not 2 <= n <= config.MAX_POPULATION:
        return False, f'n must lie in [2, {config.MAX_POPULATION}]', None
    return True, '', n


def validate_teaching_input(data: Dict[str, Any]) -> tuple[bool, str, Optional[TeachingGame]]:
    if not data:
        return False, 'Missing teaching game in request', None
    try:
        return True, '', teaching_game_from_dict(data)
    except PcmasError as e:
        return False, str(e), None


def validate_q_input(data: Dict[str, Any]) -> tuple[bool, str, Optional[np.ndarray]]:
    if not data or 'q' not in data:
        return False, 'Missing q in request', None
    try:
        q = np.array(data['q'], dtype=float)
    except (TypeError, ValueError) as e:
        return False, f'Invalid q format: {str(e)}', None
    if q.shape != (2,):
        return False, 'q must hold the two student q-values', None
    if not np.all(np.isfinite(q)):
        return False, 'q contains NaN or infinite values', None
    return True, '', q


def load_teaching_policy():
    """Policy file or bank directory named by POLICY_PATH, if any"""
    if not config.POLICY_PATH:
        logger.info("No POLICY_PATH configured; /teach/action is disabled")
        return None
    try:
        policy = load_policy_source(config.POLICY_PATH)
        logger.info(f"Loaded teaching policy from {config.POLICY_PATH}")
        return policy
    except PcmasError as e:
        logger.error(f"Failed to load teaching policy: {str(e)}")
        if config.is_production:
            raise
        return None


teaching_policy = load_teaching_policy()


def _strategy(strategy) -> list:
    return list(strategy.probs)


@app.route('/')
def api_info():
    """API information endpoint"""
    return jsonify({
        'message': 'PCMAS punishment design and teaching API',
        'version': VERSION,
        'status': 'operational',
        'endpoints': {
            '/': 'API info',
            '/health': 'Health check',
            '/punish/plan': 'POST: Punishing strategies (expects JSON {"game": {...}})',
            '/punish/deter': 'POST: Minimal punisher count (expects JSON {"game": {...}, "law": [i, j], "n": n})',
            '/punish/law': 'POST: Best social law and incentive table (expects JSON {"game": {...}})',
            '/teach/classify': 'POST: Teachability class and DIF (expects JSON {"a", "b", "c", "d", "gamma"?})',
            '/teach/action': 'POST: Optimal teacher action (expects JSON {"q": [q1, q2], "T"?: T})'
        },
        'rate_limits': {
            'default': '2000 per day, 200 per hour',
            'punish': '100 per hour'
        }
    })


@app.route('/health', methods=['GET'])
def health_check():
    """Health check endpoint"""
    return jsonify({
        'status': 'healthy',
        'timestamp': datetime.utcnow().isoformat(),
        'policy_loaded': teaching_policy is not None,
        'version': VERSION
    }), 200


@app.route('/punish/plan', methods=['POST'])
@limiter.limit("100 per hour")
def punish_plan():
    """
    Punishing strategies for both roles
    Returns: {"punish_as_p1": [...], "punish_as_p2": [...], "v": v, "v_prime": v'}
    """
    data = request.get_json(silent=True)
    is_valid, error_msg, game = validate_game_input(data)
    if not is_valid:
        logger.warning(f"Invalid plan request: {error_msg}")
        return jsonify({'error': error_msg}), 400

    try:
        plan = punishment_plan(game)
        return jsonify({
            'punish_as_p1': _strategy(plan.punish_as_p1),
            'punish_as_p2': _strategy(plan.punish_as_p2),
            'v': plan.v,
            'v_prime': plan.v_prime
        })
    except Exception as e:
        logger.error(f"Punishment plan failed: {str(e)}\n{traceback.format_exc()}")
        return jsonify({'error': 'Internal server error during punishment planning'}), 500


@app.route('/punish/deter', methods=['POST'])
@limiter.limit("100 per hour")
def punish_deter():
    """Deterrence report for a social law in a population of n agents"""
    data = request.get_json(silent=True)
    is_valid, error_msg, game = validate_game_input(data)
    if is_valid:
        is_valid, error_msg, law = validate_law_input(data, game)
    if is_valid:
        is_valid, error_msg, n = validate_population_size(data)
    if not is_valid:
        logger.warning(f"Invalid deterrence request: {error_msg}")
        return jsonify({'error': error_msg}), 400

    try:
        report = deterrence_report(game, law, n)
        loss, gain = punishment_margin(game, law)
        return jsonify({
            'law': list(law.one_based()),
            'n': n,
            'b': report.b, 'b_prime': report.b_prime,
            'e': report.e, 'e_prime': report.e_prime,
            'v': report.v, 'v_prime': report.v_prime,
            'p_min': report.p_min,
            'impossible': report.impossible,
            'loss': loss,
            'gain': gain
        })
    except Exception as e:
        logger.error(f"Deterrence report failed: {str(e)}\n{traceback.format_exc()}")
        return jsonify({'error': 'Internal server error during deterrence analysis'}), 500


@app.route('/punish/law', methods=['POST'])
@limiter.limit("100 per hour")
def punish_law():
    data = request.get_json(silent=True)
    is_valid, error_msg, game = validate_game_input(data)
    if not is_valid:
        logger.warning(f"Invalid law request: {error_msg}")
        return jsonify({'error': error_msg}), 400

    try:
        rows = law_report(game)
        best = next(row for row in rows if row.best)
        return jsonify({
            'best_law': list(best.law.one_based()),
            'laws': [{
                'law': list(row.law.one_based()),
                'b': row.b, 'b_prime': row.b_prime,
                'e': row.e, 'e_prime': row.e_prime,
                'incentive': row.incentive_sum,
                'best': row.best
            } for row in rows]
        })
    except Exception as e:
        logger.error(f"Law report failed: {str(e)}\n{traceback.format_exc()}")
        return jsonify({'error': 'Internal server error during law selection'}), 500


@app.route('/teach/classify', methods=['POST'])
def teach_classify():
    data = request.get_json(silent=True)
    is_valid, error_msg, game = validate_teaching_input(data)
    if not is_valid:
        logger.warning(f"Invalid classify request: {error_msg}")
        return jsonify({'error': error_msg}), 400

    try:
        gamma = float(data.get('gamma', config.STUDENT_DISCOUNT))
    except (TypeError, ValueError):
        return jsonify({'error': 'gamma must be a number'}), 400

    result = classify(game)
    return jsonify({
        'class': result.kind.value,
        'preempt_action': None if result.preempt_action is None else result.preempt_action + 1,
        'description': result.describe(game.teacher_names),
        'dif': dif(game, gamma),
        'gamma': gamma
    })


@app.route('/teach/action', methods=['POST'])
def teach_action():
    """Teacher action from the loaded policy at the student's q-values"""
    if teaching_policy is None:
        return jsonify({'error': 'No teaching policy loaded; set POLICY_PATH'}), 503

    data = request.get_json(silent=True)
    is_valid, error_msg, q = validate_q_input(data)
    if not is_valid:
        logger.warning(f"Invalid action request: {error_msg}")
        return jsonify({'error': error_msg}), 400

    try:
        T = float(data['T']) if 'T' in data else None
    except (TypeError, ValueError):
        return jsonify({'error': 'T must be a number'}), 400
    if T is not None and not T > 0:
        return jsonify({'error': 'T must be positive'}), 400

    try:
        action = teaching_policy.lookup(float(q[0]), float(q[1]), T)
    except PcmasError as e:
        return jsonify({'error': str(e)}), 400
    except Exception as e:
        logger.error(f"Policy lookup failed: {str(e)}\n{traceback.format_exc()}")
        return jsonify({'error': 'Internal server error during policy lookup'}), 500

    return jsonify({'action': action + 1, 'q': q.tolist(), 'T': T})


@app.errorhandler(404)
def not_found(error):
    """Handle 404 errors"""
    return jsonify({'error': 'Endpoint not found'}), 404


@app.errorhandler(500)
def internal_error(error):
    """Handle 500 errors"""
    logger.error(f"Internal server error: {str(error)}")
    return jsonify({'error': 'Internal server error'}), 500


if __name__ == '__main__':
    app.run(
        host=config.API_HOST,
        port=config.API_PORT,
        debug=config.is_development
    )
