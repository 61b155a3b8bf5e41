"""
Nearest-better clustering features: nearest-neighbour distances against the
distance to the nearest sample with strictly greater fitness.
"""

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import cdist

from ..exceptions import DegenerateDataError, InsufficientSamplesError, STATUS_DEGENERATE
from ..model import Dataset
from ..stats import correlation
from .features import FeatureValue

MIN_SAMPLES = 2
_CHUNK = 1024


def nearest_neighbour_distances(X) -> np.ndarray:
    distances, _ = cKDTree(X).query(X, k=2)
    return distances[:, 1]


def nearest_better(X, y):
    """
    (distance, index) of every sample's nearest strictly better sample. The
    best samples get distance nan and index -1.
    """
    m = len(y)
    distance = np.full(m, np.nan)
    index = np.full(m, -1, dtype=np.intp)
    for start in range(0, m, _CHUNK):
        stop = min(start + _CHUNK, m)
        block = cdist(X[start:stop], X)
        block[~(y[None, :] > y[start:stop, None])] = np.inf
        nearest = np.argmin(block, axis=1)
        found = np.isfinite(block[np.arange(stop - start), nearest])
        rows = np.arange(start, stop)[found]
        index[rows] = nearest[found]
        distance[rows] = block[np.arange(stop - start), nearest][found]
    return distance, index


def _ratio(numerator, denominator, both_zero=None) -> FeatureValue:
    if denominator == 0:
        if numerator == 0 and both_zero is not None:
            return FeatureValue(both_zero)
        return FeatureValue.undefined(STATUS_DEGENERATE)
    return FeatureValue(numerator / denominator)


def nbc_features(dataset: Dataset) -> dict:
    X, y = dataset.X, dataset.y
    m = dataset.m
    if m < MIN_SAMPLES:
        raise InsufficientSamplesError(f'nearest-better features need {MIN_SAMPLES} samples, got {m}')
    if np.ptp(y) == 0:
        raise DegenerateDataError('nearest-better features need two distinct fitness values')

    nn = nearest_neighbour_distances(X)
    nb, better = nearest_better(X, y)
    defined = better >= 0
    indegree = np.bincount(better[defined], minlength=m)

    distinct = defined & (nn > 0)
    if np.any(distinct):
        ratios = nb[distinct] / nn[distinct]
        f33 = _ratio(np.std(ratios), np.mean(ratios))
    else:
        f33 = FeatureValue.undefined(STATUS_DEGENERATE)

    return {
        'f33': f33,
        'f34': FeatureValue(correlation(y, indegree)),
        'f35': FeatureValue(correlation(nn[defined], nb[defined])),
        'f36': _ratio(np.mean(nn), np.mean(nb[defined])),
        'f37': _ratio(np.std(nn), np.std(nb[defined]), both_zero=1.0),
    }
