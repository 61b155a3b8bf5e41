import numpy as np

from ..exceptions import InsufficientSamplesError
from ..model import Dataset, Rng
from .features import ElaBudget, FeatureValue

EPSILON = 1e-10


def ela_conv(dataset: Dataset, objective, budget: ElaBudget, rng: Rng):
    """
    Convexity features from random convex combinations of sample pairs. The
    deviation from linear interpolation is measured on the cost scale
    (negated fitness), so a convex cost gives deviations below zero.

    Returns (features, evaluations used).
    """
    m = dataset.m
    if m < 2:
        raise InsufficientSamplesError(f'convexity features need 2 samples, got {m}')
    pairs = int(budget.conv_pairs)
    gen = rng.generator
    first = gen.integers(0, m, size=pairs)
    second = (first + gen.integers(1, m, size=pairs)) % m
    w = gen.random(pairs)

    X, y = dataset.X, dataset.y
    combined = w[:, None] * X[first] + (1 - w[:, None]) * X[second]
    fitness = np.asarray(objective(combined), dtype=float)
    delta = -(fitness - (w * y[first] + (1 - w) * y[second]))

    features = {
        'f1': FeatureValue(np.mean(delta < -EPSILON)),
        'f2': FeatureValue(np.mean(np.abs(delta))),
        'f3': FeatureValue(np.mean(delta)),
        'f4': FeatureValue(np.mean(np.abs(delta) <= EPSILON)),
    }
    return features, pairs
