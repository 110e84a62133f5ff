from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy import stats

from ..corpus.vocab import Vocabulary
from ..errors import StatisticsError


@dataclass(frozen=True)
class DiagnosticSeries:
    """Scalar statistic sampled at increasing steps or ranks."""

    index: np.ndarray
    values: np.ndarray
    label: str = "value"

    def __post_init__(self) -> None:
        if self.index.shape != self.values.shape:
            raise StatisticsError("Diagnostic index and values must align.")
        if not np.all(np.isfinite(self.values)):
            raise StatisticsError(f"Diagnostic series '{self.label}' contains non-finite values.")

    def __len__(self) -> int:
        return int(self.index.size)

    def value_at(self, position: float) -> float:
        """Value at the last recorded index not beyond ``position``."""

        where = int(np.searchsorted(self.index, position, side="right")) - 1
        if where < 0:
            raise StatisticsError(f"No sample at or before index {position}.")
        return float(self.values[where])

    def relative_change(self, factor: float = 10.0) -> float:
        """Relative change between the last sample and the sample ``factor`` times earlier."""

        last_index = float(self.index[-1])
        final = float(self.values[-1])
        earlier = self.value_at(last_index / factor)
        if earlier == 0:
            raise StatisticsError("Cannot compute a relative change from zero.")
        return abs(final - earlier) / abs(earlier)

    def rows(self):
        return zip(self.index.tolist(), self.values.tolist())


@dataclass(frozen=True)
class ZipfDiagnostic:
    series: DiagnosticSeries
    slope: float
    band: Tuple[int, int]

    @property
    def zipfian(self) -> bool:
        return -1.5 <= self.slope <= -0.5


def log_spaced_steps(steps: int, points: int = 60) -> np.ndarray:
    grid = np.unique(np.round(np.geomspace(1, max(steps, 1), num=points)).astype(np.int64))
    return grid[grid <= steps]


def zipf_diagnostic(source: Union[Vocabulary, np.ndarray, "object"], band: Tuple[int, int] = (10, 1000)) -> ZipfDiagnostic:
    """Series of p_i * i * ln n over ranks, and the log-log slope of p_i over a rank band."""

    counts = _counts_of(source)
    counts = np.sort(counts[counts > 0])[::-1]
    n = counts.size
    if n < 10:
        raise StatisticsError(f"Zipf diagnostic needs at least 10 words, got {n}.")
    probabilities = counts / math.fsum(counts)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    series = DiagnosticSeries(ranks, probabilities * ranks * math.log(n), label="p_i*i*ln(n)")

    low = max(1, band[0])
    high = min(n, band[1])
    if high - low < 2:
        raise StatisticsError(f"Rank band {band} leaves fewer than 3 points for n={n}.")
    selected = slice(low - 1, high)
    fit = stats.linregress(np.log(ranks[selected]), np.log(probabilities[selected]))
    return ZipfDiagnostic(series=series, slope=float(fit.slope), band=(low, high))


def _counts_of(source) -> np.ndarray:
    if isinstance(source, Vocabulary):
        return np.asarray(source.counts, dtype=np.float64)
    counts = getattr(source, "counts", source)
    return np.asarray(counts, dtype=np.float64)
