import os

import numpy as np
import pytest

import qdela  # noqa: F401  sets the kivy switches before anything imports kivy

from qdela.model import Dataset


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the scaled experiment reruns')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def sphere_dataset():
    gen = np.random.default_rng(7)
    X = gen.uniform(-5, 5, size=(300, 3))
    return Dataset(X, -np.sum(X ** 2, axis=1))


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    monkeypatch.setenv(qdela.THREADS_ENV, '1')


def write_text(path, text):
    os.makedirs(os.path.dirname(str(path)) or '.', exist_ok=True)
    with open(path, 'w', encoding='utf-8') as handle:
        handle.write(text)
    return path
