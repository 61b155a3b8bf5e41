import math

import numpy as np
import pytest

from qdela.ela.nbc import nbc_features, nearest_better, nearest_neighbour_distances
from qdela.exceptions import DegenerateDataError, InsufficientSamplesError
from qdela.model import Dataset


def _brute_nearest_better(X, y):
    distances, indices = [], []
    for i in range(len(y)):
        best, best_d = -1, math.inf
        for j in range(len(y)):
            if y[j] > y[i]:
                d = math.dist(X[i], X[j])
                if d < best_d:
                    best, best_d = j, d
        distances.append(best_d if best >= 0 else math.nan)
        indices.append(best)
    return np.array(distances), np.array(indices)


def test_line_of_four():
    features = nbc_features(Dataset([0.0, 1.0, 2.0, 3.0], [0.0, 1.0, 2.0, 3.0]))
    assert features['f36'].value == 1
    assert features['f33'].value == 0
    assert features['f35'].value == 0
    assert features['f34'].value == pytest.approx(math.sqrt(0.6))
    assert features['f37'].value == 1


def test_two_points():
    X = np.array([[0.0, 0.0], [3.0, 4.0]])
    nb, better = nearest_better(X, np.array([1.0, 2.0]))
    assert better.tolist() == [1, -1]
    assert nb[0] == nearest_neighbour_distances(X)[0] == 5
    assert nbc_features(Dataset(X, [1.0, 2.0]))['f36'].value == 1


@pytest.mark.parametrize('seed', range(50))
def test_nearest_better_matches_double_loop(seed):
    gen = np.random.default_rng(seed)
    m = int(gen.integers(2, 201))
    X = gen.random((m, int(gen.integers(1, 5))))
    # coarse fitness so that equal values occur
    y = np.round(gen.random(m) * 10)
    nb, better = nearest_better(X, y)
    expected_nb, expected_better = _brute_nearest_better(X, y)
    assert better.tolist() == expected_better.tolist()
    assert np.allclose(nb, expected_nb, equal_nan=True, rtol=0, atol=1e-12)


def test_funnel_rewards_good_points():
    gen = np.random.default_rng(1)
    X = gen.random((200, 2))
    y = -np.linalg.norm(X - [0.3, 0.7], axis=1)
    assert nbc_features(Dataset(X, y))['f34'].value > 0


def test_degenerate_inputs():
    with pytest.raises(InsufficientSamplesError):
        nbc_features(Dataset([[0.0]], [1.0]))
    with pytest.raises(DegenerateDataError):
        nbc_features(Dataset([[0.0], [1.0]], [1.0, 1.0]))
