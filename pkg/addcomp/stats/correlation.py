from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from ..errors import ParameterError, StatisticsError


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    t_statistic: float
    p_value: float


def spearman_rho(xs: Sequence[float], ys: Sequence[float]) -> CorrelationResult:
    """Pearson correlation of average ranks, with a two-sided Student-t p-value on n-2 dof."""

    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ParameterError("spearman_rho needs two one-dimensional series of equal length.")
    n = x.size
    if n < 3:
        raise ParameterError(f"spearman_rho needs at least 3 points; got {n}.")
    rx = stats.rankdata(x, method="average")
    ry = stats.rankdata(y, method="average")
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise StatisticsError("Correlation is undefined for a constant series.")
    rho = float(np.clip(np.dot(dx, dy) / math.sqrt(sxx * syy), -1.0, 1.0))
    dof = n - 2
    if abs(rho) >= 1.0:
        return CorrelationResult(rho=rho, n=n, t_statistic=math.copysign(math.inf, rho), p_value=0.0)
    t_statistic = rho * math.sqrt(dof / (1.0 - rho * rho))
    p_value = float(min(1.0, 2.0 * stats.t.sf(abs(t_statistic), dof)))
    return CorrelationResult(rho=rho, n=n, t_statistic=t_statistic, p_value=p_value)
