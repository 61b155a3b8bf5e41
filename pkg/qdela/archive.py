"""
Centroidal Voronoi tessellation of the behaviour space and the elite archive built on it.
"""

from typing import Optional

import numpy as np
from kivy.logger import Logger
from scipy.spatial import cKDTree
from sklearn.cluster import kmeans_plusplus

from . import (CVT_SAMPLES_PER_CELL, CVT_SAMPLE_FLOOR, MAX_CVT_SAMPLES,
               CVT_MAX_ITER, CVT_TOLERANCE)
from .exceptions import EmptyArchiveError, InvalidArgumentError
from .model import Dataset, Rng, Sample

BEHAVIOUR_DIM = 2
_CHUNK = 4096


class Centroids(object):

    def __init__(self, points):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != BEHAVIOUR_DIM or not len(points):
            raise InvalidArgumentError(f'centroids must be a k x {BEHAVIOUR_DIM} matrix')
        self.points = points

    def __len__(self):
        return len(self.points)

    @property
    def k(self) -> int:
        return len(self.points)


def cvt_sample_count(k: int) -> int:
    """CVT_SAMPLES_PER_CELL * k, raised to CVT_SAMPLE_FLOOR and capped at MAX_CVT_SAMPLES"""
    return int(min(max(CVT_SAMPLES_PER_CELL * k, CVT_SAMPLE_FLOOR), MAX_CVT_SAMPLES))


def compute_centroids(k: int, rng: Rng) -> Centroids:
    """
    k-means over uniform behaviour samples: k-means++ seeding followed by Lloyd
    iterations until the relative inertia change drops to CVT_TOLERANCE or
    CVT_MAX_ITER rounds have run. A cell left without samples keeps its centre.
    """
    k = int(k)
    if k < 1:
        raise InvalidArgumentError(f'archive size must be at least 1, got {k}')
    n = max(cvt_sample_count(k), k)
    samples = rng.derive('samples').generator.random((n, BEHAVIOUR_DIM))
    centers, _ = kmeans_plusplus(samples, n_clusters=k,
                                 random_state=rng.derive('kmeans++').sklearn_seed())
    centers = np.array(centers, dtype=float)

    inertia = np.inf
    for iteration in range(CVT_MAX_ITER):
        distances, labels = cKDTree(centers).query(samples, k=1)
        current = float(np.sum(distances ** 2))
        counts = np.bincount(labels, minlength=k)
        occupied = counts > 0
        for axis in range(BEHAVIOUR_DIM):
            sums = np.bincount(labels, weights=samples[:, axis], minlength=k)
            centers[occupied, axis] = sums[occupied] / counts[occupied]
        if np.isfinite(inertia) and abs(inertia - current) <= CVT_TOLERANCE * max(inertia, 1e-300):
            break
        inertia = current
    Logger.debug(f'CVT: {k} centroids from {n} samples after {iteration + 1} iterations')
    return Centroids(centers)


def nearest_centroids(behaviours, centroids: Centroids) -> np.ndarray:
    """Cell index of every row of behaviours, ties resolved to the lowest index"""
    B = np.atleast_2d(np.asarray(behaviours, dtype=float))
    points = centroids.points
    result = np.empty(len(B), dtype=np.intp)
    for start in range(0, len(B), _CHUNK):
        block = B[start:start + _CHUNK]
        d2 = np.sum((block[:, None, :] - points[None, :, :]) ** 2, axis=-1)
        # argmin returns the first minimum
        result[start:start + _CHUNK] = np.argmin(d2, axis=1)
    return result


def nearest_centroid(b, centroids: Centroids) -> int:
    return int(nearest_centroids(np.reshape(b, (1, -1)), centroids)[0])


class Archive(object):

    def __init__(self, centroids: Centroids, dim: int):
        """
        One elite slot per centroid. Empty cells hold fitness -inf.

        centroids -- the tessellation
        dim -- genotype length
        """
        self.centroids = centroids
        self.dim = int(dim)
        k = centroids.k
        self.genotypes = np.zeros((k, self.dim))
        self.fitness = np.full(k, -np.inf)
        self.behaviours = np.zeros((k, BEHAVIOUR_DIM))
        self.occupied = np.zeros(k, dtype=bool)
        self.eval_count = 0

    @property
    def k(self) -> int:
        return self.centroids.k

    def insert(self, sample: Sample, cell: Optional[int] = None) -> bool:
        """
        Keeps the sample if its cell is empty or it strictly improves on the
        incumbent. Returns whether it was kept.
        """
        if sample.behaviour is None:
            raise InvalidArgumentError('a sample needs a behaviour to enter the archive')
        if cell is None:
            cell = nearest_centroid(sample.behaviour, self.centroids)
        fitness = float(sample.fitness)
        if self.occupied[cell] and not fitness > self.fitness[cell]:
            return False
        self.genotypes[cell] = sample.genotype
        self.fitness[cell] = fitness
        self.behaviours[cell] = sample.behaviour
        self.occupied[cell] = True
        return True

    def add_batch(self, X, y, B) -> int:
        """Inserts candidates serially in the given order, returns how many were kept"""
        X = np.atleast_2d(X)
        y = np.asarray(y, dtype=float).reshape(-1)
        B = np.atleast_2d(B)
        cells = nearest_centroids(B, self.centroids)
        kept = 0
        for i in range(len(y)):
            kept += self.insert(Sample(X[i], y[i], B[i]), cell=int(cells[i]))
        return kept

    @property
    def n_occupied(self) -> int:
        return int(np.count_nonzero(self.occupied))

    @property
    def coverage(self) -> float:
        return self.n_occupied / self.k

    @property
    def qd_score(self) -> float:
        """Sum of elite fitness"""
        return float(np.sum(self.fitness[self.occupied]))

    def elites(self) -> np.ndarray:
        """Occupied cell indices in ascending order"""
        return np.flatnonzero(self.occupied)

    def snapshot(self) -> 'Archive':
        copy = Archive.__new__(Archive)
        copy.centroids = self.centroids
        copy.dim = self.dim
        copy.genotypes = self.genotypes.copy()
        copy.fitness = self.fitness.copy()
        copy.behaviours = self.behaviours.copy()
        copy.occupied = self.occupied.copy()
        copy.eval_count = self.eval_count
        return copy

    def to_dataset(self) -> Dataset:
        cells = self.elites()
        if not len(cells):
            raise EmptyArchiveError('the archive holds no elites')
        return Dataset(self.genotypes[cells], self.fitness[cells], self.behaviours[cells])

    def stats(self) -> dict:
        values = self.fitness[self.occupied]
        return {
            'occupied': self.n_occupied,
            'coverage': self.coverage,
            'qd_score': self.qd_score,
            'max_fitness': float(values.max()) if len(values) else None,
            'mean_fitness': float(values.mean()) if len(values) else None,
        }


def archive_insert(archive: Archive, sample: Sample) -> bool:
    return archive.insert(sample)


def archive_to_dataset(archive: Archive) -> Dataset:
    return archive.to_dataset()
