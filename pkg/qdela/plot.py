"""
Feature trajectories as SVG: median line and q1-q3 band per series over a
logarithmic evaluation axis, with a dashed marker at a reference evaluation count.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use('Agg')

import matplotlib.pyplot as plt
from kivy.logger import Logger

from .ela.features import FEATURE_NAMES
from .exceptions import InvalidArgumentError

SeriesRows = Sequence[Tuple[int, Optional[float], Optional[float], Optional[float]]]

# fixed ids keep the SVG byte-stable between calls
matplotlib.rcParams['svg.hashsalt'] = 'qdela'
matplotlib.rcParams['svg.fonttype'] = 'none'


@dataclass
class PlotSpec:
    feature_code: str
    series: List[Tuple[str, SeriesRows]] = field(default_factory=list)
    log_x: bool = True
    marker: Optional[int] = None

    @property
    def title(self) -> str:
        name = FEATURE_NAMES.get(self.feature_code)
        return f'{self.feature_code} ({name})' if name else self.feature_code


def _defined(rows: SeriesRows):
    return [row for row in rows if row[1] is not None]


def plot_series(spec: PlotSpec, path):
    """
    Writes the chart to path. Series ids in the SVG are band-<i>, median-<i>
    and points-<i>; the marker line is marker.
    """
    if not any(_defined(rows) for _, rows in spec.series):
        raise InvalidArgumentError(f'no defined values to plot for {spec.feature_code}')

    figure, axes = plt.subplots(figsize=(6.4, 4.0))
    try:
        xs = []
        for index, (label, rows) in enumerate(spec.series):
            rows = _defined(rows)
            if not rows:
                Logger.warning(f'Plot: series {label} has no defined values')
                continue
            x = [row[0] for row in rows]
            median = [row[1] for row in rows]
            q1 = [row[2] for row in rows]
            q3 = [row[3] for row in rows]
            xs.extend(x)
            color = f'C{index % 10}'
            band = axes.fill_between(x, q1, q3, color=color, alpha=0.25, linewidth=0)
            band.set_gid(f'band-{index}')
            if len(rows) == 1:
                bar = axes.vlines(x, q1, q3, color=color, alpha=0.5)
                bar.set_gid(f'band-bar-{index}')
            line, = axes.plot(x, median, color=color, label=label)
            line.set_gid(f'median-{index}')
            points = axes.scatter(x, median, color=color, s=12, zorder=3)
            points.set_gid(f'points-{index}')

        if spec.marker is not None:
            xs.append(spec.marker)
            marker = axes.axvline(spec.marker, color='black', linestyle='--', linewidth=1)
            marker.set_gid('marker')

        if spec.log_x:
            axes.set_xscale('log')
        low, high = min(xs), max(xs)
        if low == high:
            low, high = (low / 2, high * 2) if spec.log_x else (low - 1, high + 1)
        elif spec.log_x:
            low, high = low / 1.2, high * 1.2
        axes.set_xlim(low, high)
        axes.set_xlabel('evaluations')
        axes.set_ylabel(spec.feature_code)
        axes.set_title(spec.title)
        if len(spec.series) > 1:
            axes.legend()
        figure.tight_layout()
        figure.savefig(path, format='svg', metadata={'Date': None})
    finally:
        plt.close(figure)
    Logger.info(f'Plot: {spec.feature_code} written to {path}')
