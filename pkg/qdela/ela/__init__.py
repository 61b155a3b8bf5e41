"""
Exploratory landscape features f1..f37 of a dataset, grouped as distr, level,
meta, conv, local and nbc.
"""

import time

from kivy.logger import Logger

from ..exceptions import FeatureError, InvalidArgumentError
from ..model import Dataset, Rng
from .conv import ela_conv
from .distr import ela_distr
from .features import (FEATURE_CODES, FEATURE_GROUPS, FEATURE_NAMES, GROUP_ORDER,
                       OBJECTIVE_GROUPS, ElaBudget, FeatureValue, FeatureVector,
                       code_number, group_of, is_feature_code)
from .level import ela_level
from .local import ela_local
from .meta import ela_meta
from .nbc import nbc_features


def parse_selector(selector) -> tuple:
    """Selected groups in canonical order. Accepts names or a comma separated string"""
    if isinstance(selector, str):
        selector = [s.strip() for s in selector.split(',') if s.strip()]
    selected = set(selector)
    unknown = selected.difference(GROUP_ORDER)
    if unknown:
        raise InvalidArgumentError(f'unknown feature groups: {", ".join(sorted(unknown))}')
    if not selected:
        raise InvalidArgumentError('no feature group selected')
    return tuple(group for group in GROUP_ORDER if group in selected)


def selected_codes(selector) -> tuple:
    """Feature codes of the selected groups in numeric order"""
    codes = [code for group in parse_selector(selector) for code in FEATURE_GROUPS[group]]
    return tuple(sorted(codes, key=code_number))


def _compute_group(group, dataset, problem, budget, rng):
    """Returns (features, extra evaluations)"""
    if group == 'distr':
        return ela_distr(dataset), 0
    if group == 'level':
        return ela_level(dataset, budget, rng), 0
    if group == 'meta':
        return ela_meta(dataset), 0
    if group == 'nbc':
        return nbc_features(dataset), 0
    if group == 'conv':
        return ela_conv(dataset, problem.objective, budget, rng)
    return ela_local(dataset, problem.objective, problem.bounds, budget, rng)


def extract_all(dataset: Dataset, problem=None, budget: ElaBudget = None,
                selector=GROUP_ORDER, rng: Rng = None) -> FeatureVector:
    """
    Features of every selected group. A group that fails leaves its features
    undefined with the reason and does not stop the others.

    problem -- needed by the conv and local groups, which evaluate its objective
    rng -- each group draws from its own child stream
    """
    groups = parse_selector(selector)
    if problem is None and any(group in OBJECTIVE_GROUPS for group in groups):
        raise InvalidArgumentError('the conv and local groups need a problem to evaluate')
    budget = budget or ElaBudget()
    rng = rng or Rng(0)
    dataset = dataset.canonical()

    vector = FeatureVector()
    for group in groups:
        start = time.perf_counter()
        try:
            features, evals = _compute_group(group, dataset, problem, budget, rng.derive(group))
            vector.evals_used += int(evals)
        except FeatureError as exc:
            Logger.warning(f'ELA: {group} features undefined ({exc.status}): {exc}')
            features = {code: FeatureValue.undefined(exc.status) for code in FEATURE_GROUPS[group]}
        vector.values.update(features)
        vector.timings[group] = time.perf_counter() - start
        Logger.debug(f'ELA: {group} computed in {vector.timings[group]:.3f}s')
    return vector
