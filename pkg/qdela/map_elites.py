"""
CVT-MAP-Elites generational loop with archive snapshots at evaluation checkpoints.
"""

from typing import Iterator, List, Tuple, Union

import numpy as np
from kivy.logger import Logger

from .archive import Archive, Centroids, compute_centroids
from .exceptions import InvalidArgumentError
from .model import Rng
from .problems import Problem
from .sampling import uniform_sample
from .variation import OperatorConfig, gaussian_variation, isolinedd_variation


def check_schedule(budget: int, batch: int, checkpoints) -> List[int]:
    """Validates budget and checkpoints against the batch size, returns sorted unique checkpoints"""
    budget, batch = int(budget), int(batch)
    if batch < 1:
        raise InvalidArgumentError(f'batch must be positive, got {batch}')
    if budget < batch or budget % batch:
        raise InvalidArgumentError(f'budget {budget} is not a positive multiple of batch {batch}')
    result = sorted(set(int(c) for c in checkpoints))
    for c in result:
        if c < batch or c > budget or c % batch:
            raise InvalidArgumentError(
                f'checkpoint {c} is not a multiple of {batch} within [{batch}, {budget}]')
    return result


def select_parents(archive: Archive, count: int, operator: OperatorConfig, rng: Rng):
    """
    Uniform selection over occupied cells. IsoLineDD also gets a second parent,
    distinct from the first whenever the archive holds two elites or more.
    """
    gen = rng.generator
    cells = archive.elites()
    n = len(cells)
    first = gen.integers(0, n, size=count)
    p1 = archive.genotypes[cells[first]]
    if operator.kind != 'isolinedd':
        return p1, None
    if n < 2:
        return p1, p1.copy()
    second = (first + gen.integers(1, n, size=count)) % n
    return p1, archive.genotypes[cells[second]]


def iter_map_elites(problem: Problem, k: Union[int, Centroids], operator: OperatorConfig,
                    budget: int, batch: int, checkpoints, rng: Rng,
                    ) -> Iterator[Tuple[int, Archive]]:
    """
    Yields (eval_count, archive snapshot) at every checkpoint, after that
    generation's insertions.

    k -- archive size, or ready-made centroids shared between runs
    """
    checkpoints = set(check_schedule(budget, batch, checkpoints))
    centroids = k if isinstance(k, Centroids) else compute_centroids(k, rng.derive('cvt'))
    archive = Archive(centroids, problem.dim)
    init_rng = rng.derive('init')
    select_rng = rng.derive('select')
    vary_rng = rng.derive('vary')

    while archive.eval_count < budget:
        if archive.eval_count == 0:
            X = uniform_sample(batch, problem.bounds, init_rng)
        else:
            p1, p2 = select_parents(archive, batch, operator, select_rng)
            if operator.kind == 'isolinedd':
                X = isolinedd_variation(p1, p2, operator, problem.bounds, vary_rng)
            else:
                X = gaussian_variation(p1, operator, problem.bounds, vary_rng)
        y, B = problem.evaluate(X)
        archive.add_batch(X, y, B)
        archive.eval_count += batch
        if archive.eval_count in checkpoints:
            Logger.debug(f'MAP-Elites: {archive.eval_count}/{budget} evaluations, '
                         f'{archive.n_occupied} cells occupied')
            yield archive.eval_count, archive.snapshot()


def run_map_elites(problem: Problem, k: Union[int, Centroids], operator: OperatorConfig,
                   budget: int, batch: int, checkpoints, rng: Rng) -> List[Tuple[int, Archive]]:
    return list(iter_map_elites(problem, k, operator, budget, batch, checkpoints, rng))
