from dataclasses import dataclass

import numpy as np

from . import DEFAULT_GAUSSIAN_SIGMA, DEFAULT_ISOLINE_SIGMA1, DEFAULT_ISOLINE_SIGMA2
from .exceptions import InvalidArgumentError
from .model import Bounds, Rng

OPERATORS = ('gaussian', 'isolinedd')


@dataclass(frozen=True)
class OperatorConfig:
    """
    kind -- 'gaussian' or 'isolinedd'
    sigma -- gaussian strength, fraction of each dimension's range
    sigma1 -- isolinedd isotropic strength, absolute
    sigma2 -- isolinedd strength along the parents' line
    """
    kind: str = 'gaussian'
    sigma: float = DEFAULT_GAUSSIAN_SIGMA
    sigma1: float = DEFAULT_ISOLINE_SIGMA1
    sigma2: float = DEFAULT_ISOLINE_SIGMA2

    def __post_init__(self):
        if self.kind not in OPERATORS:
            raise InvalidArgumentError(f'unknown operator {self.kind!r}')
        for name in ('sigma', 'sigma1', 'sigma2'):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise InvalidArgumentError(f'{name} must be a non-negative number, got {value}')

    @classmethod
    def for_sampler(cls, sampler: str, **kwargs) -> 'OperatorConfig':
        """'qd-gaussian' -> gaussian, 'qd-isolinedd' -> isolinedd"""
        return cls(kind=sampler.split('-', 1)[-1], **kwargs)


def gaussian_variation(parent, cfg: OperatorConfig, bounds: Bounds, rng: Rng):
    """Works on one parent or a stack of them"""
    parent = np.asarray(parent, dtype=float)
    noise = rng.generator.standard_normal(parent.shape)
    return bounds.clip(parent + cfg.sigma * bounds.range * noise)


def isolinedd_variation(p1, p2, cfg: OperatorConfig, bounds: Bounds, rng: Rng):
    """
    clip(p1 + sigma1 * N(0, I) + sigma2 * n * (p2 - p1)) with one scalar
    n ~ N(0, 1) per child. The isotropic draw comes first, so with p1 = p2 the
    child is the gaussian child of the same stream with sigma = sigma1 / range.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise InvalidArgumentError('parents must have the same shape')
    gen = rng.generator
    noise = gen.standard_normal(p1.shape)
    line = gen.standard_normal(p1.shape[:-1] + (1,))
    return bounds.clip(p1 + cfg.sigma1 * noise + cfg.sigma2 * line * (p2 - p1))
