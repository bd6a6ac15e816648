'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import os

import pytest

from picardmult.config import Config, RunConfig, Tolerances, parse_ideal, parse_point, point_defect
from picardmult.defines import BASE_POINT, CANONICAL, REFERENCE
from picardmult.eisenstein import EisensteinIdeal, EisensteinInt
from picardmult.exceptions import InvalidConfig


CONFIG_TEST = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config_test.yaml")


def test_default_config(monkeypatch):
    monkeypatch.delenv("PICARDMULT_CONFIG", raising=False)
    config = Config()
    assert config.log_msg == 'Config: no config given => default config.'
    assert config.run.seed == 0
    assert config.suites.halfplane.samples == 100000
    assert 'log' in config


def test_file_config():
    config = Config(CONFIG_TEST)
    assert config.run.seed == 7
    assert config.log.disabled
    assert config.suites.torus.pairs == 50
    assert 'config_test.yaml' in config.log_msg


def test_dict_config_merges_defaults():
    config = Config({'run': {'seed': 3}, 'suites': {'torus': {'pairs': 5}}})
    assert config.run.seed == 3
    assert config.run.samples == 1000
    assert config.suites.torus.pairs == 5
    assert config.suites.Sigma.pairs == 1000
    assert Config(config).run.seed == 3


def test_env_config(monkeypatch):
    monkeypatch.setenv('PICARDMULT_CONFIG', CONFIG_TEST)
    assert Config().run.seed == 7


def test_bad_config():
    with pytest.raises(InvalidConfig):
        Config('/nonexistent/picardmult.yaml')
    with pytest.raises(InvalidConfig):
        Config(42)


def test_run_config_from_file(run_config):
    assert run_config.seed == 7
    assert run_config.samples == 20
    assert run_config.max_len == 8
    assert run_config.ideal == EisensteinIdeal(EisensteinInt(1))
    assert run_config.base_point == BASE_POINT
    assert run_config.normalization == CANONICAL
    assert run_config.sample_override is None
    assert not run_config.ideal_given
    assert run_config.suites.multiplier.ideals == ['1,2', '2,0']


def test_run_config_overrides():
    config = RunConfig.from_config(Config(CONFIG_TEST), seed=11, samples=4, ideal='2,0', tol_sigma_round=1e-4,
                                   base_point='-2,0;0.5,0', normalization=REFERENCE, g=None)
    assert config.seed == 11
    assert config.samples == 4 and config.sample_override == 4
    assert config.ideal == EisensteinIdeal(EisensteinInt(2)) and config.ideal_given
    assert config.tolerances.sigma_round == 1e-4
    assert config.tolerances.matrix == 1e-9
    assert config.base_point == (-2 + 0j, 0.5 + 0j)
    assert config.normalization == REFERENCE
    assert config.g is None


@pytest.mark.parametrize("overrides", [
    {'max_len': 0},
    {'max_len': 65},
    {'samples': 0},
    {'normalization': 'lower'},
    {'tol_functional': 0.0},
    {'tol_multiplier': -1.0},
    {'base_point': '1,0;0,0'},
    {'base_point': '-1,0'},
    {'base_point': 'nope'},
    {'ideal': '0,0'},
    {'ideal': 'x'},
])
def test_invalid_run_config(overrides):
    with pytest.raises(InvalidConfig):
        RunConfig.from_config(Config(CONFIG_TEST), **overrides)


def test_parse_helpers():
    assert parse_point('-1,0;0,0') == (-1 + 0j, 0j)
    assert parse_point([[-2.0, 0.5], [0.3, 0.2]]) == (complex(-2, 0.5), complex(0.3, 0.2))
    assert parse_ideal('1,2') == EisensteinIdeal(EisensteinInt(2, 1))
    assert parse_ideal({'gen': [2, 0]}) == EisensteinIdeal(EisensteinInt(2))
    assert parse_ideal([0, 1]) == EisensteinIdeal(EisensteinInt(1))
    assert point_defect((-1 + 0j, 0j)) == -2


def test_run_config_json(run_config):
    data = run_config.to_json()
    assert data['seed'] == 7
    assert data['ideal'] == {'gen': [1, 0]}
    assert data['tolerances'] == {'matrix': 1e-9, 'functional': 1e-9, 'sigma_round': 1e-6, 'multiplier': 1e-8}
    assert data['base_point'] == [[-1.0, 0.0], [0.0, 0.0]]


def test_direct_construction():
    assert RunConfig().tolerances == Tolerances()
    with pytest.raises(InvalidConfig):
        RunConfig(max_len=0)
