from dataclasses import dataclass, field
from typing import Dict, Optional

from .. import (DEFAULT_CONV_PAIRS, DEFAULT_LOCAL_STARTS_PER_DIM, MAX_LOCAL_STARTS,
                DEFAULT_LOCAL_MAX_EVALS, DEFAULT_LEVEL_FOLDS)
from ..exceptions import InvalidBudgetError, STATUS_OK

FEATURE_NAMES = {
    'f1': 'ela_conv.conv_prob',
    'f2': 'ela_conv.lin_dev.abs',
    'f3': 'ela_conv.lin_dev.orig',
    'f4': 'ela_conv.lin_prob',
    'f5': 'ela_distr.kurtosis',
    'f6': 'ela_distr.number_of_peaks',
    'f7': 'ela_distr.skewness',
    'f8': 'ela_level.lda_qda_10',
    'f9': 'ela_level.lda_qda_25',
    'f10': 'ela_level.lda_qda_50',
    'f11': 'ela_level.mmce_lda_10',
    'f12': 'ela_level.mmce_lda_25',
    'f13': 'ela_level.mmce_lda_50',
    'f14': 'ela_level.mmce_qda_10',
    'f15': 'ela_level.mmce_qda_25',
    'f16': 'ela_level.mmce_qda_50',
    'f17': 'ela_local.basin_sizes.avg_best',
    'f18': 'ela_local.basin_sizes.avg_non_best',
    'f19': 'ela_local.basin_sizes.avg_worst',
    'f20': 'ela_local.best2mean_contr.orig',
    'f21': 'ela_local.best2mean_contr.ratio',
    'f22': 'ela_local.n_loc_opt.abs',
    'f23': 'ela_local.n_loc_opt.rel',
    'f24': 'ela_meta.lin_simple.adj_r2',
    'f25': 'ela_meta.lin_simple.coef.max',
    'f26': 'ela_meta.lin_simple.coef.max_by_min',
    'f27': 'ela_meta.lin_simple.coef.min',
    'f28': 'ela_meta.lin_simple.intercept',
    'f29': 'ela_meta.lin_w_interact.adj_r2',
    'f30': 'ela_meta.quad_simple.adj_r2',
    'f31': 'ela_meta.quad_simple.cond',
    'f32': 'ela_meta.quad_w_interact.adj_r2',
    'f33': 'nbc.dist_ratio.coeff_var',
    'f34': 'nbc.nb_fitness.cor',
    'f35': 'nbc.nn_nb.cor',
    'f36': 'nbc.nn_nb.mean_ratio',
    'f37': 'nbc.nn_nb.sd_ratio',
}

FEATURE_CODES = tuple(f'f{i}' for i in range(1, 38))

FEATURE_GROUPS = {
    'distr': ('f5', 'f6', 'f7'),
    'level': tuple(f'f{i}' for i in range(8, 17)),
    'meta': tuple(f'f{i}' for i in range(24, 33)),
    'conv': ('f1', 'f2', 'f3', 'f4'),
    'local': tuple(f'f{i}' for i in range(17, 24)),
    'nbc': tuple(f'f{i}' for i in range(33, 38)),
}
GROUP_ORDER = ('distr', 'level', 'meta', 'conv', 'local', 'nbc')
OBJECTIVE_GROUPS = ('conv', 'local')

LEVEL_QUANTILES = (0.10, 0.25, 0.50)


def code_number(code: str) -> int:
    return int(code[1:])


def is_feature_code(code) -> bool:
    return code in FEATURE_NAMES


def group_of(code: str) -> str:
    for group, codes in FEATURE_GROUPS.items():
        if code in codes:
            return group
    raise KeyError(code)


class FeatureValue(object):
    """A feature value, or None with the reason it could not be computed"""

    __slots__ = ('value', 'status')

    def __init__(self, value: Optional[float], status: str = STATUS_OK):
        if (value is None) == (status == STATUS_OK):
            raise ValueError(f'value {value!r} does not match status {status!r}')
        self.value = None if value is None else float(value)
        self.status = status

    @classmethod
    def undefined(cls, status: str) -> 'FeatureValue':
        return cls(None, status)

    @property
    def defined(self) -> bool:
        return self.status == STATUS_OK

    def __eq__(self, other):
        if not isinstance(other, FeatureValue):
            return NotImplemented
        return self.value == other.value and self.status == other.status

    def __repr__(self):
        return f'FeatureValue({self.value!r}, {self.status!r})'


@dataclass
class FeatureVector:
    values: Dict[str, FeatureValue] = field(default_factory=dict)
    evals_used: int = 0
    timings: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, code) -> FeatureValue:
        return self.values[code]

    def __contains__(self, code):
        return code in self.values

    def value(self, code) -> Optional[float]:
        return self.values[code].value

    def items(self):
        """(code, FeatureValue) in numeric code order"""
        return sorted(self.values.items(), key=lambda item: code_number(item[0]))


@dataclass(frozen=True)
class ElaBudget:
    """
    Extra objective evaluations the conv and local groups may spend, and the
    fold count of the level group. local_starts None means min(50 d, 400).
    """
    conv_pairs: int = DEFAULT_CONV_PAIRS
    local_starts: Optional[int] = None
    local_max_evals: int = DEFAULT_LOCAL_MAX_EVALS
    level_folds: int = DEFAULT_LEVEL_FOLDS

    def __post_init__(self):
        for name in ('conv_pairs', 'local_starts', 'local_max_evals', 'level_folds'):
            value = getattr(self, name)
            if value is not None and int(value) < 1:
                raise InvalidBudgetError(f'{name} must be positive, got {value}')

    def starts_for(self, dim: int) -> int:
        if self.local_starts is not None:
            return int(self.local_starts)
        return min(DEFAULT_LOCAL_STARTS_PER_DIM * int(dim), MAX_LOCAL_STARTS)
