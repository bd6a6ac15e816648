'''
Copyright (C) 2026 picardmult developers

Please see the LICENSE file for the terms and conditions
associated with this software.
'''
import os

import numpy as np
import pytest

from picardmult.config import Config, RunConfig
from picardmult.suites import Context


CONFIG_TEST = os.path.join(os.path.dirname(__file__), 'config_test.yaml')


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def run_config():
    return RunConfig.from_config(Config(CONFIG_TEST))


@pytest.fixture(scope="session")
def context(run_config):
    """
    Presentation, defects, extension and splitting, computed once per session.
    """
    return Context(run_config)


@pytest.fixture(scope="session")
def presentation(context):
    return context.presentation


@pytest.fixture(scope="session")
def defects(context):
    return context.defects


@pytest.fixture(scope="session")
def extension(context):
    return context.extension


@pytest.fixture(scope="session")
def kappa_table(context):
    return context.table


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs every suite end to end")
