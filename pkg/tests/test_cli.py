"""
Tests for the pcmas command line
"""
import json
import os

import pandas as pd
import pytest

from cli.app import main
from config import config
from tmdp import TeachingPolicy

LAW_PD_FILE = 'data/games/law_pd.json'


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(config, 'LOG_DIR', str(tmp_path / 'logs'))


def run_json(capsys, argv):
    assert main(['--json'] + argv) == 0
    return json.loads(capsys.readouterr().out)


class TestPunishCommands:
    """punish plan | deter | law"""

    def test_plan(self, capsys):
        data = run_json(capsys, ['punish', 'plan', '--game', LAW_PD_FILE])
        assert data['punish_as_p1'] == pytest.approx([0.0, 1.0])
        assert data['v'] == pytest.approx(5.0)

    def test_deter_text(self, capsys):
        assert main(['punish', 'deter', '--game', LAW_PD_FILE, '--law', '1,1', '--n', '16']) == 0
        assert 'p_min = 9' in capsys.readouterr().out

    def test_law(self, capsys):
        rows = run_json(capsys, ['punish', 'law', '--game', 'data/games/three_efficient.json'])
        assert [row['law'] for row in rows if row['best']] == [[1, 2]]

    def test_missing_game_file(self, tmp_path):
        assert main(['punish', 'plan', '--game', str(tmp_path / 'none.json')]) == 2

    def test_bad_law_format(self):
        with pytest.raises(SystemExit):
            main(['punish', 'deter', '--game', LAW_PD_FILE, '--law', 'one', '--n', '16'])


class TestPopsimCommand:
    """popsim run"""

    def test_run_with_trace(self, tmp_path, capsys):
        cfg = {'game_file': os.path.abspath(LAW_PD_FILE), 'law': [1, 1], 'n': 16, 'p': 9, 'c': 6, 'm': 1,
               'policy': 'rational', 'iterations': 500, 'seed': 3}
        path = tmp_path / 'pop.json'
        path.write_text(json.dumps(cfg))
        trace = tmp_path / 'trace.csv'
        data = run_json(capsys, ['popsim', 'run', '--config', str(path), '--trace', str(trace)])
        assert data['deviations'] == 0
        assert len(pd.read_csv(trace)) == 500

    def test_invalid_config(self, tmp_path):
        path = tmp_path / 'pop.json'
        path.write_text(json.dumps({'game_file': os.path.abspath(LAW_PD_FILE), 'law': [1, 1],
                                    'n': 5, 'p': 1, 'c': 1, 'm': 1}))
        assert main(['popsim', 'run', '--config', str(path)]) == 2


class TestTmdpCommands:
    """tmdp solve"""

    def test_solve(self, tmp_path, capsys):
        out = tmp_path / 'policy.bin'
        data = run_json(capsys, ['--out', str(out), 'tmdp', 'solve', '--cells', '11', '--temp', '1.0',
                                 '--gamma0', '0.9', '--tol', '1e-4'])
        assert data['cells'] == 11
        policy = TeachingPolicy.load(str(out))
        assert policy.T == 1.0
        assert policy.grid.n_states == 121


class TestTeachCommands:
    """teach run | classify | blockpush"""

    def test_classify(self, capsys):
        data = run_json(capsys, ['teach', 'classify'])
        assert data['class'] == 'challenging'
        assert data['dif'] == pytest.approx(27.8)

    def test_classify_file(self, capsys):
        data = run_json(capsys, ['teach', 'classify', '--game', 'data/games/block_pushing.json'])
        assert data['class'] == 'preemptable'
        assert data['preempt_action'] == 2

    def test_run(self, tmp_path, capsys):
        log = tmp_path / 'session.csv'
        data = run_json(capsys, ['--seed', '4', 'teach', 'run', '--teacher', '2tft', '--student', 'ql',
                                 '--schedule', 'fixed:2', '--iterations', '200', '--log', str(log)])
        assert data['iterations'] == 200
        assert data['generator'] == 'pcmas-pcg64-v1'
        frame = pd.read_csv(log)
        assert set(frame['student_action']) <= {1, 2}

    def test_run_is_seeded(self, capsys):
        argv = ['--seed', '8', 'teach', 'run', '--teacher', 'learner', '--iterations', '300']
        assert run_json(capsys, argv) == run_json(capsys, argv)

    def test_optimal_without_policy(self, tmp_path):
        assert main(['teach', 'run', '--teacher', 'optimal', '--policy', str(tmp_path / 'none.bin'),
                     '--iterations', '10']) == 2

    def test_unknown_teacher(self):
        assert main(['teach', 'run', '--teacher', 'grim', '--iterations', '10']) == 2

    def test_blockpush_csv(self, tmp_path):
        out = tmp_path / 'bp.csv'
        assert main(['--out', str(out), 'teach', 'blockpush', '--K', '0,50', '--iterations', '50',
                     '--trials', '1', '--no-baseline']) == 0
        frame = pd.read_csv(out)
        assert len(frame) == 6
        assert frame.columns.tolist() == ['experiment', 'x', 'iterations', 'mean', 'sd', 'trials', 'seed']


class TestFigCommand:
    """fig <id>"""

    def test_temperature_sweep(self, tmp_path):
        out = tmp_path / 'fig.csv'
        assert main(['--out', str(out), 'fig', 'fig3-tft', '--trials', '2', '--iterations', '30,60',
                     '--temps', '1,4']) == 0
        frame = pd.read_csv(out)
        assert len(frame) == 4
        assert (frame['experiment'] == 'fig3-tft').all()

    def test_defaults_to_results_dir(self, tmp_path, monkeypatch):
        monkeypatch.setattr(config, 'RESULTS_DIR', str(tmp_path / 'results'))
        assert main(['fig', 'fig3-tft', '--trials', '1', '--iterations', '30', '--temps', '1']) == 0
        frame = pd.read_csv(tmp_path / 'results' / 'fig3-tft.csv')
        assert len(frame) == 1

    def test_unknown_experiment(self):
        with pytest.raises(SystemExit):
            main(['fig', 'fig9'])
