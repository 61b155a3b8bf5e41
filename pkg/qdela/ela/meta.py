"""
Meta-model features: fit quality and coefficients of least-squares regressions
of fitness on linear and quadratic terms of the genotype.
"""

from itertools import combinations

import numpy as np

from ..exceptions import DegenerateDataError, STATUS_DEGENERATE, STATUS_INSUFFICIENT
from ..model import Dataset
from .features import FeatureValue


def design_matrix(X, quadratic: bool, interactions: bool) -> np.ndarray:
    """Intercept column, then x, then x^2 and x_i x_j (i < j) when asked for"""
    columns = [np.ones(len(X)), *X.T]
    if quadratic:
        columns.extend(X.T ** 2)
    if interactions:
        columns.extend(X[:, i] * X[:, j] for i, j in combinations(range(X.shape[1]), 2))
    return np.column_stack(columns)


def fit_model(X, y, quadratic=False, interactions=False):
    """
    Returns (coefficients, adjusted R^2), or None when m does not exceed the
    parameter count plus one. The parameter count excludes the intercept.
    Rank-deficient designs get the minimum-norm solution.
    """
    A = design_matrix(X, quadratic, interactions)
    m, p = len(y), A.shape[1] - 1
    if m <= p + 1:
        return None
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = y - A @ coef
    ss_res = float(residual @ residual)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot
    return coef, 1.0 - (1.0 - r2) * (m - 1) / (m - p - 1)


def _ratio(numerator, denominator) -> FeatureValue:
    if denominator == 0:
        return FeatureValue.undefined(STATUS_DEGENERATE)
    return FeatureValue(numerator / denominator)


def ela_meta(dataset: Dataset) -> dict:
    X, y = dataset.X, dataset.y
    if np.ptp(y) == 0:
        raise DegenerateDataError('meta-model features need non-constant fitness')
    d = dataset.dim
    missing = FeatureValue.undefined(STATUS_INSUFFICIENT)
    result = {}

    linear = fit_model(X, y)
    if linear is None:
        result.update({code: missing for code in ('f24', 'f25', 'f26', 'f27', 'f28')})
    else:
        coef, adj_r2 = linear
        slopes = np.abs(coef[1:d + 1])
        result['f24'] = FeatureValue(adj_r2)
        result['f25'] = FeatureValue(slopes.max())
        result['f26'] = _ratio(slopes.max(), slopes.min())
        result['f27'] = FeatureValue(slopes.min())
        result['f28'] = FeatureValue(coef[0])

    interact = fit_model(X, y, interactions=True)
    result['f29'] = missing if interact is None else FeatureValue(interact[1])

    quadratic = fit_model(X, y, quadratic=True)
    if quadratic is None:
        result['f30'] = result['f31'] = missing
    else:
        coef, adj_r2 = quadratic
        squares = np.abs(coef[d + 1:2 * d + 1])
        result['f30'] = FeatureValue(adj_r2)
        result['f31'] = _ratio(squares.max(), squares.min())

    full = fit_model(X, y, quadratic=True, interactions=True)
    result['f32'] = missing if full is None else FeatureValue(full[1])
    return result
