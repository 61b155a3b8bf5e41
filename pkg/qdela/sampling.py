import numpy as np

from .exceptions import InvalidArgumentError
from .model import Bounds, Rng


def _check_count(m):
    if int(m) < 1:
        raise InvalidArgumentError(f'sample count must be at least 1, got {m}')
    return int(m)


def lhs_sample(m: int, bounds: Bounds, rng: Rng) -> np.ndarray:
    """
    Latin hypercube design of m points: in every dimension each of the m
    equal-width strata holds exactly one point, placed uniformly inside it.
    Returns an (m, d) array.
    """
    m = _check_count(m)
    gen = rng.generator
    strata = np.stack([gen.permutation(m) for _ in range(bounds.dim)], axis=1)
    unit = (strata + gen.random((m, bounds.dim))) / m
    return bounds.clip(bounds.lower + unit * bounds.range)


def uniform_sample(m: int, bounds: Bounds, rng: Rng) -> np.ndarray:
    m = _check_count(m)
    return rng.generator.uniform(bounds.lower, bounds.upper, size=(m, bounds.dim))
