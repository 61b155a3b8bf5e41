"""
Local-search features: Nelder-Mead runs started from dataset points, their end
points grouped into optima, and basin statistics of those optima.
"""

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

from ..exceptions import InsufficientSamplesError, STATUS_DEGENERATE
from ..model import Bounds, Dataset, Rng
from .features import ElaBudget, FeatureValue
from .nelder_mead import nelder_mead

SIMPLEX_STEP = 0.05
MERGE_DISTANCE = 0.01
SAME_LEVEL = 1e-8


def cluster_optima(points, threshold: float) -> np.ndarray:
    """Single-linkage labels 0..n-1, numbered in order of first appearance"""
    if len(points) == 1:
        return np.zeros(1, dtype=int)
    raw = fcluster(linkage(points, method='single'), t=threshold, criterion='distance')
    _, first, labels = np.unique(raw, return_index=True, return_inverse=True)
    # renumber so that labels follow the order of the searches
    rank = np.empty(len(first), dtype=int)
    rank[np.argsort(first, kind='stable')] = np.arange(len(first))
    return rank[labels.reshape(-1)]


def ela_local(dataset: Dataset, objective, bounds: Bounds, budget: ElaBudget, rng: Rng):
    """Returns (features, evaluations used)"""
    starts = budget.starts_for(dataset.dim)
    if starts < 2:
        raise InsufficientSamplesError(f'local search features need 2 starts, got {starts}')
    m = dataset.m
    picks = rng.generator.choice(m, size=starts, replace=starts > m)

    def cost(x):
        # outside the box: cost of the nearest box point plus the squared distance to it
        inside = bounds.clip(x)
        return -float(objective(inside)) + float(np.sum((x - inside) ** 2))

    optima, costs, evals = [], [], 0
    for index in picks:
        result = nelder_mead(cost, dataset.X[index], SIMPLEX_STEP * bounds.range,
                             budget.local_max_evals)
        optima.append(bounds.clip(result.x))
        costs.append(result.fun)
        evals += result.nfev
    optima = np.array(optima)
    costs = np.array(costs)

    labels = cluster_optima(optima, MERGE_DISTANCE * bounds.diagonal)
    n_clusters = int(labels.max()) + 1
    basin = np.bincount(labels, minlength=n_clusters) / starts
    level = np.array([costs[labels == c].min() for c in range(n_clusters)])
    best = level <= level.min() + SAME_LEVEL
    worst = level >= level.max() - SAME_LEVEL

    spread = costs.max() - costs.min()
    contrast = costs.mean() - costs.min()
    features = {
        'f17': FeatureValue(basin[best].mean()),
        'f18': (FeatureValue(basin[~best].mean()) if np.any(~best)
                else FeatureValue.undefined(STATUS_DEGENERATE)),
        'f19': FeatureValue(basin[worst].mean()),
        'f20': FeatureValue(contrast),
        'f21': FeatureValue(contrast / spread if spread > SAME_LEVEL else 0.0),
        'f22': FeatureValue(n_clusters),
        'f23': FeatureValue(n_clusters / starts),
    }
    return features, evals
