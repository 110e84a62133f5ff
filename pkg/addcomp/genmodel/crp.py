from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..errors import ParameterError
from .diagnostics import DiagnosticSeries, log_spaced_steps
from .params import PYParams
from .rng import UniformStream, make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CRPState:
    """Final state of a Pitman-Yor restaurant: word counts C(ϖ) in creation order."""

    params: PYParams
    counts: np.ndarray
    seed: int
    series: DiagnosticSeries
    sequence: Optional[np.ndarray] = None

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def distinct(self) -> int:
        return int(np.count_nonzero(self.counts))

    def probabilities(self) -> np.ndarray:
        return self.counts / float(self.total)

    def ranked_counts(self) -> np.ndarray:
        return np.sort(self.counts)[::-1]


def sample_pitman_yor(
    params: PYParams,
    steps: int,
    seed: int,
    *,
    record_sequence: bool = False,
    stream: str = "crp",
) -> CRPState:
    """Run the Chinese restaurant process of PY(alpha, theta) for ``steps`` tokens.

    The series records C / N^(1/alpha) at log-spaced steps.
    """

    if steps < 1:
        raise ParameterError("steps must be >= 1.")
    alpha, theta = params.alpha, params.theta
    uniforms = UniformStream(make_rng(seed, stream))
    counts: List[int] = []
    tokens: List[int] = []
    checkpoints = set(log_spaced_steps(steps).tolist())
    series_index: List[int] = []
    series_values: List[float] = []

    for step in range(1, steps + 1):
        total = step - 1
        distinct = len(counts)
        if total == 0 or uniforms.next() * (theta + total) < theta + alpha * distinct:
            word = distinct
            counts.append(1)
        else:
            # Propose proportional to C(ϖ), accept with (C(ϖ) - alpha) / C(ϖ).
            while True:
                word = tokens[int(uniforms.next() * total)]
                count = counts[word]
                if uniforms.next() * count < count - alpha:
                    break
            counts[word] += 1
        tokens.append(word)
        if step in checkpoints:
            series_index.append(step)
            series_values.append(step / len(counts) ** (1.0 / alpha))

    logger.info("PY(%s, %s): %d steps, %d words", alpha, theta, steps, len(counts))
    return CRPState(
        params=params,
        counts=np.asarray(counts, dtype=np.int64),
        seed=seed,
        series=DiagnosticSeries(
            np.asarray(series_index, dtype=np.float64),
            np.asarray(series_values, dtype=np.float64),
            label="C/N^(1/alpha)",
        ),
        sequence=np.asarray(tokens, dtype=np.int64) if record_sequence else None,
    )


def crp_diagnostic(state: CRPState) -> DiagnosticSeries:
    return state.series
