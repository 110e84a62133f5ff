from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import optimize, stats

from ..errors import ParameterError

logger = logging.getLogger(__name__)

# Category upper edges for X = p^T_i / p_i: [X<16, 16<=X<32, 32<=X<64, 64<=X<128, X>=128].
CATEGORY_EDGES: Tuple[float, ...] = (16.0, 32.0, 64.0, 128.0)
M_RANGE: Tuple[float, float] = (1.0 / 16.0, 0.5)
DOF = 3
PASS_LEVEL = 1e-4
MIN_TOTAL = 50
GRID_POINTS = 1024


@dataclass(frozen=True)
class ChisqResult:
    m_star: float
    chi2: float
    dof: int
    p_value: float
    counts: Tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.p_value >= PASS_LEVEL


def model_probabilities(m: float) -> np.ndarray:
    """Category probabilities when P(x <= X) = m / x above 16."""

    return np.array([1.0 - m / 16.0, m / 32.0, m / 64.0, m / 128.0, m / 128.0])


def chisq_statistic(counts: np.ndarray, m: float) -> float:
    expected = counts.sum() * model_probabilities(m)
    return float(np.sum((counts - expected) ** 2 / expected))


def categorize(ratios: np.ndarray) -> np.ndarray:
    """Counts of the five ratio categories."""

    bins = np.searchsorted(np.asarray(CATEGORY_EDGES), np.asarray(ratios, dtype=np.float64), side="right")
    return np.bincount(bins, minlength=len(CATEGORY_EDGES) + 1).astype(np.int64)


def chisq_index1_test(category_counts: Sequence[int]) -> ChisqResult:
    counts = np.asarray(category_counts)
    if counts.shape != (5,):
        raise ParameterError("chisq_index1_test needs exactly 5 category counts.")
    if np.any(counts < 0) or not np.all(np.equal(np.mod(counts, 1), 0)):
        raise ParameterError("Category counts must be nonnegative integers.")
    counts = counts.astype(np.float64)
    if counts.sum() < MIN_TOTAL:
        raise ParameterError(f"Category counts must total at least {MIN_TOTAL}; got {int(counts.sum())}.")

    low, high = M_RANGE
    grid = np.linspace(low, high, GRID_POINTS)
    values = np.array([chisq_statistic(counts, m) for m in grid])
    best = int(np.argmin(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, GRID_POINTS - 1)]
    refined = optimize.minimize_scalar(
        lambda m: chisq_statistic(counts, m), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    m_star, chi2 = float(grid[best]), float(values[best])
    if refined.success and refined.fun < chi2:
        m_star, chi2 = float(refined.x), float(refined.fun)
    p_value = float(stats.chi2.sf(chi2, DOF))
    logger.info("chi-square test: m*=%.6f chi2=%.4f p=%.4g", m_star, chi2, p_value)
    return ChisqResult(
        m_star=m_star,
        chi2=chi2,
        dof=DOF,
        p_value=min(1.0, max(0.0, p_value)),
        counts=tuple(int(c) for c in counts),
    )
