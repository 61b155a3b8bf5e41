"""
Two-sample rank test and descriptive statistics of feature values across runs.
"""

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.stats import norm, rankdata

from .exceptions import InvalidArgumentError

EXACT_LIMIT = 14
METHOD_EXACT = 'exact'
METHOD_NORMAL = 'normal-approx'


class TestResult(NamedTuple):
    u_statistic: float
    p_value: float
    n_a: int
    n_b: int
    method: str
    excluded: int = 0

    # not a pytest test class
    __test__ = False


def defined_values(xs) -> np.ndarray:
    """Drops None and nan entries"""
    return np.array([float(x) for x in xs if x is not None and not np.isnan(float(x))], dtype=float)


@lru_cache(maxsize=None)
def u_null_distribution(n_a: int, n_b: int) -> Tuple[np.ndarray, int]:
    """
    Counts of every U value 0..n_a n_b over all ways of giving n_a of the
    ranks 1..n_a+n_b to the first sample, and the number of ways.
    """
    offset = n_a * (n_a + 1) // 2
    sums = np.fromiter((sum(c) for c in combinations(range(1, n_a + n_b + 1), n_a)), dtype=np.int64)
    counts = np.bincount(sums - offset, minlength=n_a * n_b + 1)
    counts.setflags(write=False)
    return counts, int(counts.sum())


def exact_p_value(u: float, n_a: int, n_b: int) -> float:
    counts, total = u_null_distribution(n_a, n_b)
    u = int(round(u))
    lower = counts[:u + 1].sum() / total
    upper = counts[u:].sum() / total
    return float(min(1.0, 2 * min(lower, upper)))


def normal_p_value(u: float, ranks, n_a: int, n_b: int) -> float:
    """Tie-corrected normal approximation with a 0.5 continuity correction"""
    n = n_a + n_b
    _, ties = np.unique(ranks, return_counts=True)
    tie_term = np.sum(ties ** 3 - ties) / (n * (n - 1)) if n > 1 else 0.0
    variance = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if variance <= 0:
        return 1.0
    z = max(abs(u - n_a * n_b / 2.0) - 0.5, 0.0) / np.sqrt(variance)
    return float(min(1.0, 2 * norm.sf(z)))


def mann_whitney_u(a, b) -> TestResult:
    """
    Two-sided Mann-Whitney U test, U reported for sample a. Undefined values
    (None, nan) are dropped first and counted in `excluded`. The exact null
    distribution is used for tie-free samples of at most EXACT_LIMIT values
    together, the normal approximation otherwise.
    """
    a_raw, b_raw = list(a), list(b)
    a, b = defined_values(a_raw), defined_values(b_raw)
    excluded = len(a_raw) - len(a) + len(b_raw) - len(b)
    n_a, n_b = len(a), len(b)
    if not n_a or not n_b:
        raise InvalidArgumentError('both samples need at least one defined value')

    ranks = rankdata(np.concatenate([a, b]))
    u = float(ranks[:n_a].sum() - n_a * (n_a + 1) / 2.0)
    tie_free = len(np.unique(ranks)) == len(ranks)
    if tie_free and n_a + n_b <= EXACT_LIMIT:
        p, method = exact_p_value(u, n_a, n_b), METHOD_EXACT
    else:
        p, method = normal_p_value(u, ranks, n_a, n_b), METHOD_NORMAL
    p = max(p, np.finfo(float).tiny)
    return TestResult(u, p, n_a, n_b, method, excluded)


def median_iqr(xs) -> Tuple[Optional[float], Optional[float], Optional[float]]:
    """(median, q1, q3) with linear interpolation, undefined entries dropped"""
    values = defined_values(xs)
    if not len(values):
        return None, None, None
    q1, median, q3 = np.percentile(values, [25, 50, 75])
    return float(median), float(q1), float(q3)


def correlation(a, b) -> float:
    """Pearson correlation, 0 when either side has no variance"""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) < 2:
        return 0.0
    a = a - a.mean()
    b = b - b.mean()
    denominator = np.sqrt(np.sum(a * a) * np.sum(b * b))
    if denominator == 0:
        return 0.0
    return float(np.clip(np.sum(a * b) / denominator, -1.0, 1.0))
