"""
Shape of the fitness distribution: skewness, kurtosis and the number of modes.
"""

import numpy as np
from scipy.signal import find_peaks
from scipy.stats import gaussian_kde, kurtosis, skew

from ..exceptions import InsufficientSamplesError, STATUS_DEGENERATE
from ..model import Dataset
from .features import FeatureValue

MIN_SAMPLES = 3
KDE_GRID = 512
PEAK_MASS = 0.01


def silverman_bandwidth(y) -> float:
    """0.9 min(sd, IQR / 1.34) m^(-1/5); the sd term alone when the IQR is zero"""
    y = np.asarray(y, dtype=float)
    sd = np.std(y, ddof=1)
    q1, q3 = np.percentile(y, [25, 75])
    spread = min(sd, (q3 - q1) / 1.34) if q3 > q1 else sd
    return 0.9 * spread * len(y) ** (-0.2)


def count_peaks(y) -> int:
    """
    Modes of a Gaussian KDE on a 512-point grid. The grid is cut at the local
    minima of the density and a segment counts as a mode when it holds at
    least PEAK_MASS of the probability.
    """
    y = np.asarray(y, dtype=float)
    h = silverman_bandwidth(y)
    kde = gaussian_kde(y, bw_method=h / np.std(y, ddof=1))
    grid = np.linspace(y.min() - 3 * h, y.max() + 3 * h, KDE_GRID)
    density = kde(grid)
    minima, _ = find_peaks(-density)
    edges = np.concatenate([[0], minima, [KDE_GRID - 1]])
    peaks = 0
    for start, stop in zip(edges[:-1], edges[1:]):
        mass = np.trapezoid(density[start:stop + 1], grid[start:stop + 1])
        if mass >= PEAK_MASS:
            peaks += 1
    return max(peaks, 1)


def ela_distr(dataset: Dataset) -> dict:
    y = dataset.y
    if len(y) < MIN_SAMPLES:
        raise InsufficientSamplesError(f'distribution features need {MIN_SAMPLES} samples, got {len(y)}')
    if np.ptp(y) == 0:
        return {
            'f5': FeatureValue.undefined(STATUS_DEGENERATE),
            'f6': FeatureValue(1),
            'f7': FeatureValue.undefined(STATUS_DEGENERATE),
        }
    return {
        'f5': FeatureValue(kurtosis(y, fisher=True, bias=True)),
        'f6': FeatureValue(count_peaks(y)),
        'f7': FeatureValue(skew(y, bias=True)),
    }
