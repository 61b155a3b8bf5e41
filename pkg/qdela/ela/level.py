"""
Level-set features: how well LDA and QDA separate the samples above a fitness
quantile from the rest, under stratified cross-validation.
"""

from typing import Optional

import numpy as np
from sklearn.model_selection import StratifiedKFold

from ..exceptions import InsufficientSamplesError, STATUS_DEGENERATE, STATUS_INSUFFICIENT
from ..model import Dataset, Rng
from .features import ElaBudget, FeatureValue, LEVEL_QUANTILES

RIDGE = 1e-8
RIDGE_FLOOR = 1e-12

_LDA_QDA = {0.10: 'f8', 0.25: 'f9', 0.50: 'f10'}
_MMCE_LDA = {0.10: 'f11', 0.25: 'f12', 0.50: 'f13'}
_MMCE_QDA = {0.10: 'f14', 0.25: 'f15', 0.50: 'f16'}


def _scatter(X, mean):
    centered = X - mean
    return centered.T @ centered


def _regularised(cov):
    d = cov.shape[0]
    lam = max(RIDGE * np.trace(cov) / d, RIDGE_FLOOR)
    return cov + lam * np.eye(d)


class _Gaussian(object):
    """Two-class Gaussian discriminant with a pooled (LDA) or per-class (QDA) covariance"""

    def __init__(self, pooled: bool):
        self.pooled = pooled

    def fit(self, X, labels):
        self.classes = (False, True)
        self.means = [X[labels == c].mean(axis=0) for c in self.classes]
        counts = [np.count_nonzero(labels == c) for c in self.classes]
        self.log_priors = [np.log(n / len(labels)) for n in counts]
        scatters = [_scatter(X[labels == c], mu) for c, mu in zip(self.classes, self.means)]
        if self.pooled:
            pooled = _regularised(sum(scatters) / max(len(labels) - 2, 1))
            self.covs = [pooled, pooled]
        else:
            self.covs = [_regularised(s / max(n - 1, 1)) for s, n in zip(scatters, counts)]
        self.log_dets = [np.linalg.slogdet(cov)[1] for cov in self.covs]
        return self

    def predict(self, X):
        scores = []
        for mu, cov, log_det, log_prior in zip(self.means, self.covs, self.log_dets, self.log_priors):
            centered = X - mu
            mahalanobis = np.sum(centered * np.linalg.solve(cov, centered.T).T, axis=1)
            scores.append(-0.5 * mahalanobis - 0.5 * log_det + log_prior)
        # ties go to the lower class
        return scores[1] > scores[0]


def cross_validated_errors(X, labels, folds: int, seed: int):
    """Mean misclassification error of LDA and QDA over stratified folds"""
    splitter = StratifiedKFold(n_splits=folds, shuffle=True, random_state=seed)
    lda_errors, qda_errors = [], []
    for train, test in splitter.split(X, labels):
        for pooled, errors in ((True, lda_errors), (False, qda_errors)):
            model = _Gaussian(pooled).fit(X[train], labels[train])
            errors.append(np.mean(model.predict(X[test]) != labels[test]))
    return float(np.mean(lda_errors)), float(np.mean(qda_errors))


def ela_level(dataset: Dataset, budget: ElaBudget = None, rng: Optional[Rng] = None) -> dict:
    budget = budget or ElaBudget()
    rng = rng or Rng(0)
    folds = int(budget.level_folds)
    m = dataset.m
    if m < 10 * folds:
        raise InsufficientSamplesError(f'level features need {10 * folds} samples, got {m}')
    if folds < 2:
        raise InsufficientSamplesError('level features need at least two folds')
    X, y = dataset.X, dataset.y
    result = {}
    for q in LEVEL_QUANTILES:
        labels = y > np.quantile(y, q)
        smallest = min(np.count_nonzero(labels), np.count_nonzero(~labels))
        if smallest < folds:
            for codes in (_LDA_QDA, _MMCE_LDA, _MMCE_QDA):
                result[codes[q]] = FeatureValue.undefined(STATUS_INSUFFICIENT)
            continue
        lda, qda = cross_validated_errors(X, labels, folds, rng.derive(f'q{q:.2f}').sklearn_seed())
        result[_MMCE_LDA[q]] = FeatureValue(lda)
        result[_MMCE_QDA[q]] = FeatureValue(qda)
        if qda == 0:
            ratio = FeatureValue(1.0) if lda == 0 else FeatureValue.undefined(STATUS_DEGENERATE)
        else:
            ratio = FeatureValue(lda / qda)
        result[_LDA_QDA[q]] = ratio
    return result
