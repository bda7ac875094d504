"""
PCMAS command line
Punishment design, population simulation, teacher MDP solving and teaching experiments
"""
import argparse
import json
import logging
import os
import sys
from typing import Any, List, Optional

import pandas as pd

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import config
from experiments import (
    BlockPushConfig,
    DIF_GAMMAS,
    EXPERIMENT_IDS,
    blockpush,
    dif_sweep,
    preset,
    run_experiment,
    write_results,
)
from games import JointAction, PcmasError, load_matrix_game
from learning import parse_schedule
from population import load_population_config, run_population
from punishment import (
    deterrence_report,
    law_report,
    punishment_margin,
    punishment_plan,
)
from rng import GENERATOR_NAME
from teaching import (
    StudentSpec,
    classify,
    dif,
    load_teaching_game,
    parse_teacher,
    run_session,
    teaching_pd,
)
from tmdp import BANK_TEMPERATURES, QGrid, load_policy_source, policy_filename, solve_bank, solve_policy

logger = logging.getLogger('pcmas')


def setup_logging() -> None:
    os.makedirs(config.LOG_DIR, exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(os.path.join(config.LOG_DIR, 'cli.log')),
            logging.StreamHandler()
        ]
    )


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(',') if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers, got {text!r}')


def _ints(text: str) -> List[int]:
    """Comma-separated integers or a `start:stop:step` range (stop inclusive)"""
    try:
        if ':' in text:
            start, stop, step = (int(x) for x in text.split(':'))
            return list(range(start, stop + 1, step))
        return [int(x) for x in text.split(',') if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected integers or start:stop:step, got {text!r}')


def _law(text: str) -> JointAction:
    try:
        i, j = (int(x) for x in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected a law as i,j (1-based), got {text!r}')
    return JointAction.from_one_based(i, j)


def _emit(args, payload: Any, lines: List[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print('\n'.join(lines))


def _emit_frame(args, frame: pd.DataFrame) -> None:
    if args.out:
        write_results(frame, args.out)
    elif args.json:
        print(frame.to_json(orient='records'))
    else:
        frame.to_csv(sys.stdout, index=False)


def _strategy(strategy) -> List[float]:
    return list(strategy.probs)


def _teaching_game(args):
    return load_teaching_game(args.game) if args.game else teaching_pd()


# punish

def cmd_punish_plan(args) -> None:
    game = load_matrix_game(args.game)
    plan = punishment_plan(game)
    payload = {'punish_as_p1': _strategy(plan.punish_as_p1), 'punish_as_p2': _strategy(plan.punish_as_p2),
               'v': plan.v, 'v_prime': plan.v_prime}
    lines = [f"punish as player 1: {_strategy(plan.punish_as_p1)}",
             f"punish as player 2: {_strategy(plan.punish_as_p2)}",
             f"v = {plan.v:g}, v' = {plan.v_prime:g}"]
    for role, strategy in (('1', plan.punish_as_p1), ('2', plan.punish_as_p2)):
        if strategy.pure_action is not None:
            lines.append(f"  as player {role}: pure strategy {strategy.pure_action + 1}")
    _emit(args, payload, lines)


def cmd_punish_deter(args) -> None:
    game = load_matrix_game(args.game)
    report = deterrence_report(game, args.law, args.n)
    loss, gain = punishment_margin(game, args.law)
    payload = {'law': list(args.law.one_based()), 'n': report.n, 'b': report.b, 'b_prime': report.b_prime,
               'e': report.e, 'e_prime': report.e_prime, 'v': report.v, 'v_prime': report.v_prime,
               'p_min': report.p_min, 'impossible': report.impossible, 'loss': loss, 'gain': gain}
    p_min = 'impossible' if report.impossible else str(report.p_min)
    lines = [f"law {args.law.one_based()}, n = {report.n}",
             f"b + b' = {report.b + report.b_prime:g}, e + e' = {report.e + report.e_prime:g}, "
             f"v + v' = {report.v + report.v_prime:g}",
             f"p_min = {p_min}",
             f"per-encounter loss {loss:g}, gain {gain:g}"]
    _emit(args, payload, lines)


def cmd_punish_law(args) -> None:
    game = load_matrix_game(args.game)
    rows = law_report(game)
    payload = [{'law': list(r.law.one_based()), 'b': r.b, 'b_prime': r.b_prime, 'e': r.e,
                'e_prime': r.e_prime, 'incentive': r.incentive_sum, 'best': r.best} for r in rows]
    lines = [f"{r.law.one_based()}  b+b'={r.incentive_sum:g}  e+e'={r.e + r.e_prime:g}"
             f"{'  <- best' if r.best else ''}" for r in rows]
    _emit(args, payload, lines)


# popsim

def cmd_popsim_run(args) -> None:
    pop = load_population_config(args.config)
    if args.seed is not None:
        pop.seed = args.seed
    stats = run_population(pop, trace_path=args.trace)
    lines = [f"{role}: mean {mean if mean is None else round(mean, 6)} "
             f"over {stats.encounters[role]} encounters" for role, mean in stats.mean_payoff.items()]
    lines += [f"deviations {stats.deviations}, punishments {stats.punishments}",
              f"malicious s.e. {stats.malicious_se}", f"first deviation {stats.first_deviation}"]
    _emit(args, stats.as_dict(), lines)


# tmdp

def _grid(args, game) -> QGrid:
    if args.q_lo is not None and args.q_hi is not None:
        return QGrid(args.q_lo, args.q_hi, args.cells)
    return QGrid.for_game(game, args.cells)


def cmd_tmdp_solve(args) -> None:
    game = _teaching_game(args)
    policy = solve_policy(game, _grid(args, game), args.temp, args.alpha, args.gamma0, args.tol)
    out = args.out or os.path.join(config.POLICY_DIR, policy_filename(args.temp))
    policy.save(out)
    value = policy.value_at(0.0, 0.0)
    _emit(args, {'path': out, 'T': policy.T, 'cells': policy.grid.cells, 'value_at_origin': value},
          [f"saved policy for T={policy.T:g} to {out}", f"V at (0, 0): {value:.6f}"])


def cmd_tmdp_solve_bank(args) -> None:
    game = _teaching_game(args)
    temps = args.temps or list(BANK_TEMPERATURES)
    bank = solve_bank(game, _grid(args, game), temps, args.alpha, args.gamma0, args.tol)
    directory = args.out or config.POLICY_DIR
    bank.save(directory)
    _emit(args, {'dir': directory, 'temperatures': bank.temperatures},
          [f"saved {len(bank.policies)} policies to {directory}"])


# teach

def _student(args) -> StudentSpec:
    return StudentSpec(args.student, alpha=args.alpha, gamma=args.gamma, memory=args.memory)


def cmd_teach_run(args) -> None:
    game = _teaching_game(args)
    teacher = parse_teacher(args.teacher)
    if teacher.kind == 'optimal':
        teacher = teacher.with_policy(load_policy_source(args.policy or config.POLICY_DIR))
    seed = config.PCMAS_SEED if args.seed is None else args.seed
    log = run_session(_student(args), teacher, game, args.iterations, parse_schedule(args.schedule), seed)
    if args.log:
        frame = log.to_frame()
        frame['student_action'] += 1
        frame['teacher_action'] += 1
        frame.to_csv(args.log, index=False)
    rate = log.rate(game.target_action)
    _emit(args, {'teacher': teacher.describe(), 'student': args.student, 'iterations': len(log),
                 'target_rate': rate, 'seed': seed, 'generator': GENERATOR_NAME},
          [f"{teacher.describe()} vs {args.student}: target action rate {rate:.4f} over {len(log)} iterations"])


def cmd_teach_classify(args) -> None:
    game = _teaching_game(args)
    result = classify(game)
    value = dif(game, args.gamma)
    preempt = None if result.preempt_action is None else result.preempt_action + 1
    payload = {'class': result.kind.value, 'preempt_action': preempt, 'dif': value}
    lines = [f"class: {result.describe(game.teacher_names)}", f"DIF (gamma={args.gamma:g}): {value:g}"]
    _emit(args, payload, lines)


def _base_seed(args) -> int:
    return config.PCMAS_SEED if args.seed is None else args.seed


def cmd_teach_dif_sweep(args) -> None:
    frame = dif_sweep(gammas=args.gammas, trials=args.trials, iterations=args.iterations, seed=_base_seed(args))
    _emit_frame(args, frame)


def cmd_teach_blockpush(args) -> None:
    cfg = BlockPushConfig(h=args.h, c_factor=args.c_factor, iterations=args.iterations,
                          alpha=args.alpha, schedule=args.schedule, trials=args.trials)
    frame = blockpush(cfg, args.K, seed=_base_seed(args), baseline=not args.no_baseline)
    _emit_frame(args, frame)


# fig

def cmd_fig(args) -> None:
    seed = _base_seed(args)
    if args.id == 'fig7-dif':
        frame = dif_sweep(trials=args.trials or 100, iterations=(args.iterations or [10000])[0], seed=seed)
    elif args.id == 'fig8-blockpush':
        cfg = BlockPushConfig(iterations=(args.iterations or [10000])[0], trials=args.trials or 50)
        frame = blockpush(cfg, _ints(f'0:{cfg.iterations}:500'), seed=seed)
    else:
        spec = preset(args.id).with_overrides(
            trials=args.trials,
            iterations=tuple(args.iterations) if args.iterations else None,
            temperatures=tuple(args.temps) if args.temps else None,
            seed=seed,
        )
        frame = run_experiment(spec)
    if not args.out and not args.json:
        args.out = os.path.join(config.RESULTS_DIR, f'{args.id}.csv')
        logger.info(f"Writing {args.id} to {args.out}")
    _emit_frame(args, frame)


def _add_game(parser, required: bool = False) -> None:
    parser.add_argument('--game', required=required, help='game JSON file')


def _add_grid(parser) -> None:
    _add_game(parser)
    parser.add_argument('--cells', type=int, default=config.TMDP_CELLS)
    parser.add_argument('--q-lo', type=float, default=None)
    parser.add_argument('--q-hi', type=float, default=None)
    parser.add_argument('--alpha', type=float, default=config.LEARNING_RATE)
    parser.add_argument('--gamma0', type=float, default=config.TMDP_GAMMA0)
    parser.add_argument('--tol', type=float, default=config.TMDP_TOL)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='pcmas', description=__doc__.strip().splitlines()[1])
    parser.add_argument('--seed', type=int, default=None, help=f'base seed (default {config.PCMAS_SEED})')
    parser.add_argument('--out', default=None, help='output file (CSV, policy file or directory)')
    parser.add_argument('--json', action='store_true', help='print JSON instead of text')
    commands = parser.add_subparsers(dest='command', required=True)

    punish = commands.add_parser('punish', help='punishment design').add_subparsers(dest='action', required=True)
    p = punish.add_parser('plan', help='punishing strategies and projected-game values')
    _add_game(p, required=True)
    p.set_defaults(func=cmd_punish_plan)
    p = punish.add_parser('deter', help='minimal punisher count for a social law')
    _add_game(p, required=True)
    p.add_argument('--law', type=_law, required=True, help='joint action i,j (1-based)')
    p.add_argument('--n', type=int, required=True, help='population size')
    p.set_defaults(func=cmd_punish_deter)
    p = punish.add_parser('law', help='incentive table over efficient solutions')
    _add_game(p, required=True)
    p.set_defaults(func=cmd_punish_law)

    popsim = commands.add_parser('popsim', help='population simulation').add_subparsers(dest='action', required=True)
    p = popsim.add_parser('run')
    p.add_argument('--config', required=True, help='population config JSON')
    p.add_argument('--trace', default=None, help='per-encounter trace CSV')
    p.set_defaults(func=cmd_popsim_run)

    tmdp = commands.add_parser('tmdp', help='teacher MDP').add_subparsers(dest='action', required=True)
    p = tmdp.add_parser('solve', help='solve the optimal teaching policy at one temperature')
    _add_grid(p)
    p.add_argument('--temp', type=float, required=True)
    p.set_defaults(func=cmd_tmdp_solve)
    p = tmdp.add_parser('solve-bank', help='solve policies over a temperature grid')
    _add_grid(p)
    p.add_argument('--temps', type=_floats, default=None)
    p.set_defaults(func=cmd_tmdp_solve_bank)

    teach = commands.add_parser('teach', help='teaching sessions').add_subparsers(dest='action', required=True)
    p = teach.add_parser('run', help='one teaching session')
    _add_game(p)
    p.add_argument('--teacher', default='tft', help='tft|2tft|fixed:I|fixed:II|learner|optimal|delayed:K')
    p.add_argument('--student', choices=['bql', 'ql'], default='bql')
    p.add_argument('--memory', type=int, default=1)
    p.add_argument('--alpha', type=float, default=config.LEARNING_RATE)
    p.add_argument('--gamma', type=float, default=config.STUDENT_DISCOUNT)
    p.add_argument('--schedule', default='decay', help="'fixed:T', 'decay' or 'decay:T0:rate:offset'")
    p.add_argument('--iterations', type=int, default=10000)
    p.add_argument('--policy', default=None, help='policy file or bank directory for the optimal teacher')
    p.add_argument('--log', default=None, help='per-iteration CSV log')
    p.set_defaults(func=cmd_teach_run)
    p = teach.add_parser('classify', help='teachability class and DIF')
    _add_game(p)
    p.add_argument('--gamma', type=float, default=config.STUDENT_DISCOUNT)
    p.set_defaults(func=cmd_teach_classify)
    p = teach.add_parser('dif-sweep', help='TFT coop rate against DIF')
    p.add_argument('--gammas', type=_floats, default=list(DIF_GAMMAS))
    p.add_argument('--trials', type=int, default=100)
    p.add_argument('--iterations', type=int, default=10000)
    p.set_defaults(func=cmd_teach_dif_sweep)
    p = teach.add_parser('blockpush', help='delayed hard pushing against a blind Q-learner')
    p.add_argument('--K', type=_ints, default=_ints('0:10000:500'), help='K values, list or start:stop:step')
    p.add_argument('--h', type=float, default=1.0)
    p.add_argument('--c-factor', type=float, default=2.0)
    p.add_argument('--alpha', type=float, default=0.001)
    p.add_argument('--schedule', default='decay')
    p.add_argument('--iterations', type=int, default=10000)
    p.add_argument('--trials', type=int, default=50)
    p.add_argument('--no-baseline', action='store_true')
    p.set_defaults(func=cmd_teach_blockpush)

    p = commands.add_parser('fig', help='reproduce a teaching experiment (CSV under RESULTS_DIR unless --out or --json)')
    p.add_argument('id', choices=[e for e in EXPERIMENT_IDS if e != 'custom'])
    p.add_argument('--trials', type=int, default=None)
    p.add_argument('--iterations', type=_ints, default=None)
    p.add_argument('--temps', type=_floats, default=None)
    p.set_defaults(func=cmd_fig)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging()
    for error in config.validate():
        logger.error(f"Configuration error: {error}")
    try:
        args.func(args)
    except PcmasError as e:
        logger.error(f"{args.command} failed: {str(e)}")
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
