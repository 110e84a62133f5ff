from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import FitError, ParameterError

logger = logging.getLogger(__name__)

MIN_SAMPLE = 10


@dataclass(frozen=True)
class PowerLawFit:
    """Tail fit of P(x <= X | m <= X) = m^alpha / x^alpha.

    ``alpha`` is the survival index; the density of the same model decays with
    exponent ``density_exponent`` = alpha + 1.
    """

    alpha: float
    m: float
    ks: float
    n_tail: int

    @property
    def density_exponent(self) -> float:
        return self.alpha + 1.0

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "density_exponent": self.density_exponent,
            "ks": self.ks,
            "m": self.m,
            "n_tail": self.n_tail,
        }


def _ks_distance(tail: np.ndarray, m: float, alpha: float) -> float:
    n = tail.size
    model = 1.0 - np.power(m / tail, alpha)
    steps = np.arange(1, n + 1, dtype=np.float64) / n
    return float(max(np.max(steps - model), np.max(model - (steps - 1.0 / n))))


def fit_power_law(
    sample: Sequence[float],
    *,
    m: Optional[float] = None,
    max_candidates: int = 2000,
) -> PowerLawFit:
    """Maximum-likelihood tail index with the lower bound m chosen by minimum KS distance.

    With ``m`` given the scan is skipped. Otherwise the candidates are the
    distinct sample values, thinned to ``max_candidates`` quantile-spaced ones
    (always including the minimum).
    """

    values = np.sort(np.asarray(sample, dtype=np.float64))
    if values.size < MIN_SAMPLE and m is None:
        raise ParameterError(f"fit_power_law needs at least {MIN_SAMPLE} points; got {values.size}.")
    if values.size == 0 or not np.all(values > 0) or not np.all(np.isfinite(values)):
        raise ParameterError("fit_power_law needs finite positive values.")
    logs = np.log(values)
    # suffix[k] = sum of logs[k:]
    suffix = np.concatenate([np.cumsum(logs[::-1])[::-1], [0.0]])

    if m is not None:
        if m <= 0:
            raise ParameterError("m must be positive.")
        start = int(np.searchsorted(values, m, side="left"))
        fit = _fit_at(values, suffix, start, float(m))
        if fit is None:
            raise FitError(f"Fewer than 2 distinct-valued points at or above m={m}.")
        return fit

    distinct = np.unique(values)
    if distinct.size > max_candidates:
        picks = np.unique(np.linspace(0, distinct.size - 1, max_candidates).round().astype(np.int64))
        distinct = distinct[picks]
    best: Optional[PowerLawFit] = None
    for candidate in distinct:
        start = int(np.searchsorted(values, candidate, side="left"))
        fit = _fit_at(values, suffix, start, float(candidate))
        if fit is not None and (best is None or fit.ks < best.ks):
            best = fit
    if best is None:
        raise FitError("No candidate lower bound leaves 2 or more points with a positive log spread.")
    logger.info("power-law fit: alpha=%.4f m=%.6g ks=%.4g n_tail=%d", best.alpha, best.m, best.ks, best.n_tail)
    return best


def _fit_at(values: np.ndarray, suffix: np.ndarray, start: int, m: float) -> Optional[PowerLawFit]:
    n_tail = values.size - start
    if n_tail < 2:
        return None
    spread = suffix[start] - n_tail * np.log(m)
    if spread <= 0:
        return None
    alpha = n_tail / spread
    tail = values[start:]
    return PowerLawFit(alpha=float(alpha), m=m, ks=_ks_distance(tail, m, alpha), n_tail=int(n_tail))
