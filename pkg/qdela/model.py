"""
Shared domain types: genotype bounds, samples, datasets and the seeded random stream.

Fitness is always maximised. Minimisation benchmarks are negated where they are defined.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .exceptions import InvalidArgumentError

SEED_MASK = (1 << 64) - 1

Genotype = np.ndarray
Behaviour = np.ndarray


@dataclass(frozen=True, eq=False)
class Bounds:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1 or not lower.size:
            raise InvalidArgumentError('bounds need two vectors of the same length')
        if not np.all(lower < upper):
            raise InvalidArgumentError('every lower bound must be below its upper bound')
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @classmethod
    def uniform(cls, low: float, high: float, dim: int) -> 'Bounds':
        return cls(np.full(dim, low, dtype=float), np.full(dim, high, dtype=float))

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def range(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.range))

    def clip(self, x):
        return np.clip(x, self.lower, self.upper)

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.lower) & (x <= self.upper)))


class Sample(NamedTuple):
    genotype: Genotype
    fitness: float
    behaviour: Optional[Behaviour] = None


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    m samples held column-wise: genotypes X (m x d), fitness y (m,) and
    optional behaviours B (m x 2)
    """
    X: np.ndarray
    y: np.ndarray
    B: Optional[np.ndarray] = None
    canonical_order: bool = field(default=False, repr=False)

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=float).reshape(-1)
        if not len(y):
            raise InvalidArgumentError('a dataset needs at least one sample')
        if X.ndim == 1:
            X = X.reshape(len(y), -1)
        if X.shape[0] != len(y):
            raise InvalidArgumentError(f'{X.shape[0]} genotypes for {len(y)} fitness values')
        if not np.all(np.isfinite(y)):
            raise InvalidArgumentError('fitness values must be finite')
        object.__setattr__(self, 'X', X)
        object.__setattr__(self, 'y', y)
        if self.B is not None:
            B = np.asarray(self.B, dtype=float).reshape(len(y), 2)
            object.__setattr__(self, 'B', B)

    @classmethod
    def from_samples(cls, samples) -> 'Dataset':
        samples = list(samples)
        if not samples:
            raise InvalidArgumentError('a dataset needs at least one sample')
        X = np.array([np.asarray(s.genotype, dtype=float) for s in samples])
        y = np.array([s.fitness for s in samples], dtype=float)
        B = None
        if all(s.behaviour is not None for s in samples):
            B = np.array([s.behaviour for s in samples], dtype=float)
        return cls(X, y, B)

    def __len__(self):
        return len(self.y)

    @property
    def m(self) -> int:
        return len(self.y)

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    @property
    def samples(self) -> Iterator[Sample]:
        for i in range(self.m):
            yield Sample(self.X[i], float(self.y[i]), None if self.B is None else self.B[i])

    def canonical(self) -> 'Dataset':
        """
        Rows sorted by (fitness, genotype). Feature groups work on this order so
        their results do not depend on how the rows were listed.
        """
        if self.canonical_order:
            return self
        keys = [self.X[:, j] for j in reversed(range(self.dim))] + [self.y]
        order = np.lexsort(keys)
        B = None if self.B is None else self.B[order]
        return Dataset(self.X[order], self.y[order], B, canonical_order=True)


class RunRecord(NamedTuple):
    """One feature of one run at one checkpoint. value is None unless status is ok"""
    run_id: int
    eval_count: int
    feature_code: str
    value: Optional[float]
    status: str


class Rng:
    """
    Seeded Philox stream. Children are derived from the seed and a label, never
    from the parent's state, so a child is the same however much the parent was used.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & SEED_MASK
        self.generator = np.random.Generator(np.random.Philox(self.seed))

    def derive(self, label: str) -> 'Rng':
        return derive_rng(self, label)

    def sklearn_seed(self) -> int:
        """A 32-bit seed for libraries that only take a legacy random_state"""
        return int(self.generator.integers(0, 2 ** 32 - 1))

    def __repr__(self):
        return f'Rng(seed={self.seed})'


def derive_rng(parent: Rng, label: str) -> Rng:
    if not label:
        raise InvalidArgumentError('child streams need a non-empty label')
    digest = hashlib.blake2b(f'{parent.seed}/{label}'.encode('utf-8'), digest_size=8).digest()
    return Rng(int.from_bytes(digest, 'little'))
