from typing import NamedTuple

import numpy as np
from scipy.spatial.distance import pdist

REFLECTION = 1.0
EXPANSION = 2.0
CONTRACTION = 0.5
SHRINK = 0.5
X_TOLERANCE = 1e-8
F_TOLERANCE = 1e-10


class NelderMeadResult(NamedTuple):
    x: np.ndarray
    fun: float
    nfev: int


class _BudgetSpent(Exception):
    pass


class _CountedFunction(object):

    def __init__(self, func, max_evals):
        self.func = func
        self.max_evals = int(max_evals)
        self.nfev = 0
        self.best_x = None
        self.best_f = np.inf

    def __call__(self, x):
        if self.nfev >= self.max_evals:
            raise _BudgetSpent
        self.nfev += 1
        value = float(self.func(x))
        if value < self.best_f or self.best_x is None:
            self.best_x, self.best_f = np.array(x, dtype=float), value
        return value


def nelder_mead(func, x_start, step, max_evals: int) -> NelderMeadResult:
    """
    Minimises func from x_start. Never calls func more than max_evals times.

    step -- initial simplex edge per dimension (scalar or vector)
    Stops when the simplex diameter drops below X_TOLERANCE, the spread of
    its values below F_TOLERANCE, or the evaluation budget is spent.
    """
    counted = _CountedFunction(func, max_evals)
    x_start = np.asarray(x_start, dtype=float)
    dim = len(x_start)
    step = np.broadcast_to(np.asarray(step, dtype=float), (dim,))
    try:
        simplex = [x_start]
        for i in range(dim):
            x = x_start.copy()
            x[i] += step[i]
            simplex.append(x)
        simplex = np.array(simplex)
        scores = np.array([counted(x) for x in simplex])

        while True:
            order = np.argsort(scores, kind='stable')
            simplex, scores = simplex[order], scores[order]
            if scores[-1] - scores[0] < F_TOLERANCE:
                break
            if np.max(pdist(simplex)) < X_TOLERANCE:
                break

            centroid = simplex[:-1].mean(axis=0)
            worst = simplex[-1]

            xr = centroid + REFLECTION * (centroid - worst)
            rscore = counted(xr)
            if scores[0] <= rscore < scores[-2]:
                simplex[-1], scores[-1] = xr, rscore
                continue

            if rscore < scores[0]:
                xe = centroid + EXPANSION * (xr - centroid)
                escore = counted(xe)
                if escore < rscore:
                    simplex[-1], scores[-1] = xe, escore
                else:
                    simplex[-1], scores[-1] = xr, rscore
                continue

            xc = centroid + CONTRACTION * (worst - centroid)
            cscore = counted(xc)
            if cscore < scores[-1]:
                simplex[-1], scores[-1] = xc, cscore
                continue

            best = simplex[0]
            for i in range(1, len(simplex)):
                simplex[i] = best + SHRINK * (simplex[i] - best)
                scores[i] = counted(simplex[i])
    except _BudgetSpent:
        pass
    return NelderMeadResult(counted.best_x, counted.best_f, counted.nfev)
