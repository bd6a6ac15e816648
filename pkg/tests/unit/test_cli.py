'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import os

import pytest
from yapic import json

from picardmult import cli, suites
from picardmult.cli import main, parser, run
from picardmult.defines import EXIT_FAIL, EXIT_PASS, EXIT_USAGE
from picardmult.exceptions import InvalidConfig, NotInBall, SplittingError
from picardmult.suites import Report


CONFIG_TEST = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config_test.yaml")


def invoke(capsys, *args):
    code = main(list(args) + ['--config', CONFIG_TEST])
    return code, capsys.readouterr()


def test_parser():
    args = parser().parse_args(['sigma', '--g', 'n1', '--h', 'n2', '--tol-sigma', '1e-5', '--max-len', '4'])
    assert args.command == 'sigma'
    assert args.tol_sigma_round == 1e-5
    assert args.max_len == 4
    assert args.output is None

    with pytest.raises(SystemExit):
        parser().parse_args(['nope'])


def test_abelianize(capsys):
    code, out = invoke(capsys, 'abelianize')
    assert code == EXIT_PASS
    data = json.loads(out.out)
    assert data['suite'] == 'abelianize'
    assert data['values']['rank'] == 2
    assert data['values']['torsion'] == [3, 3, 3]


def test_verify_relations(capsys):
    code, out = invoke(capsys, 'verify-relations')
    assert code == EXIT_PASS
    assert json.loads(out.out)['counts']['passed'] == 13


def test_sigma(capsys):
    code, out = invoke(capsys, 'sigma', '--g', 't:zeta', '--h', 't:zeta')
    assert code == EXIT_PASS
    assert json.loads(out.out)['values']['sigma'] == -1


def test_Sigma(capsys):
    code, out = invoke(capsys, 'Sigma', '--g', 'n1', '--h', 'n2')
    assert code == EXIT_PASS
    assert json.loads(out.out)['values']['Sigma'] == '1/4'


@pytest.mark.parametrize("args", [
    ('tower', '--ideal', '0,0'),
    ('sigma', '--g', 'n9', '--h', 'n1'),
    ('sigma', '--g', 't:2,0', '--h', 'n1'),
    ('tower', '--max-len', '0'),
    ('tower', '--tau', '1,0;0,0'),
])
def test_usage_errors(capsys, args):
    code, out = invoke(capsys, *args)
    assert code == EXIT_USAGE
    assert out.err.startswith('picardmult: ')
    assert out.out == ''


def test_missing_config(capsys):
    assert main(['tower', '--config', '/nonexistent.yaml']) == EXIT_USAGE


def test_deterministic(capsys):
    _, first = invoke(capsys, 'tower', '--seed', '3', '--samples', '5')
    _, second = invoke(capsys, 'tower', '--seed', '3', '--samples', '5')
    assert first.out == second.out


def test_output_file(capsys, tmp_path):
    path = tmp_path / 'report.json'
    code, out = invoke(capsys, 'tower', '--samples', '3', '--out', str(path))
    assert code == EXIT_PASS
    assert json.loads(path.read_text()) == json.loads(out.out)


def test_failing_check_exit_code(capsys, monkeypatch):
    monkeypatch.setitem(suites.SUITES, 'tower', lambda ctx: Report('tower', checks={'forced': False}))
    code, out = invoke(capsys, 'tower')
    assert code == EXIT_FAIL
    data = json.loads(out.out)
    assert not data['passed']
    assert data['checks'] == {'forced': False}


def test_domain_failure_exit_code(capsys, monkeypatch):
    def no_splitting(ctx):
        raise SplittingError("no homomorphism with Phi(z) = 1/12 annihilates the relators")

    monkeypatch.setitem(suites.SUITES, 'tower', no_splitting)
    code, out = invoke(capsys, 'tower')
    assert code == EXIT_FAIL
    data = json.loads(out.out)
    assert data['checks'] == {'completed': False}
    assert data['values']['error'].startswith('SplittingError')


def test_domain_failure_outside_suite(capsys, monkeypatch):
    def outside(command, config):
        raise NotInBall("point (2+0j, 0j) is outside the ball")

    monkeypatch.setattr(cli, 'run', outside)
    code, out = invoke(capsys, 'tower')
    assert code == EXIT_FAIL
    assert out.out == ''
    assert out.err.startswith('picardmult: NotInBall')


def test_run():
    report = run('tower', {'run': {'samples': 2}, 'log': {'disabled': True}})
    assert report.passed
    with pytest.raises(InvalidConfig):
        run('nope')
