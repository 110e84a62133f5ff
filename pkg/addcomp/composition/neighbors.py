from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import DomainError, ParameterError

logger = logging.getLogger(__name__)


def nearest_neighbors(
    labels: Sequence[str],
    vectors: np.ndarray,
    query: np.ndarray,
    k: int,
    *,
    exclude: Sequence[str] = (),
) -> List[Tuple[str, float]]:
    """Top-k candidates by cosine to ``query``; ties are broken by label."""

    if k < 1:
        raise ParameterError("k must be >= 1.")
    query = np.asarray(query, dtype=np.float64)
    query_norm = float(np.linalg.norm(query))
    if query_norm == 0.0:
        raise DomainError("The query vector has zero norm.")
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.shape[0] != len(labels):
        raise ParameterError("labels and vectors must have the same number of rows.")
    norms = np.linalg.norm(vectors, axis=1)
    excluded = set(exclude)
    keep = np.ones(len(labels), dtype=bool)
    for index, (label, norm) in enumerate(zip(labels, norms)):
        if label in excluded:
            keep[index] = False
        elif norm == 0.0:
            logger.warning("skipping zero-norm candidate %s", label)
            keep[index] = False
    candidates = np.flatnonzero(keep)
    cosines = vectors[candidates] @ query / (norms[candidates] * query_norm)
    names = np.asarray(labels, dtype=object)[candidates].astype(str)
    order = np.lexsort((names, -cosines))[:k]
    return [(str(names[j]), float(cosines[j])) for j in order]
