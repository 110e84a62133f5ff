from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import EvaluationError, ParameterError, StatisticsError
from ..reduce.embedding import EmbeddingSet
from ..stats.correlation import spearman_rho
from .datasets import PhraseSimDataset, PhraseSimRow

logger = logging.getLogger(__name__)

COMPOSERS = ("additive", "tensor")


@dataclass(frozen=True)
class CategoryResult:
    category: str
    rho: float
    p_value: float
    n_used: int
    n_dropped: int

    def as_dict(self) -> Dict[str, object]:
        return {"rho": self.rho, "p_value": self.p_value, "n_used": self.n_used, "n_dropped": self.n_dropped}


def word_labels(w1: str, w2: str, nearfar: bool) -> Tuple[str, str]:
    """Embedding labels of the left and right word of a phrase."""

    if nearfar:
        return f"{w1}•", f"•{w2}"
    return w1, w2


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    denominator = float(np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.dot(u, v)) / denominator if denominator else 0.0


def phrase_similarity(
    embeddings: EmbeddingSet, row: PhraseSimRow, composer: str, nearfar: bool = False
) -> Optional[float]:
    """Model similarity of the two phrases of a row, or None when a word has no embedding."""

    labels = word_labels(*row.phrase1, nearfar) + word_labels(*row.phrase2, nearfar)
    if any(label not in embeddings for label in labels):
        return None
    v1, v2, v3, v4 = (embeddings.lookup(label) for label in labels)
    if composer == "additive":
        return _cosine(0.5 * (v1 + v2), 0.5 * (v3 + v4))
    return _cosine(v1, v3) * _cosine(v2, v4)


def phrase_similarity_eval(
    embeddings: EmbeddingSet,
    dataset: PhraseSimDataset,
    composer: str = "additive",
    *,
    nearfar: bool = False,
) -> Dict[str, CategoryResult]:
    """Spearman's rho between model similarities and human scores, per category."""

    if composer not in COMPOSERS:
        raise ParameterError(f"composer must be one of {', '.join(COMPOSERS)}; got {composer!r}.")
    model: Dict[str, List[float]] = {}
    human: Dict[str, List[float]] = {}
    dropped: Dict[str, int] = {}
    for row in dataset.rows:
        model.setdefault(row.category, [])
        human.setdefault(row.category, [])
        dropped.setdefault(row.category, 0)
        similarity = phrase_similarity(embeddings, row, composer, nearfar)
        if similarity is None:
            dropped[row.category] += 1
            continue
        model[row.category].append(similarity)
        human[row.category].append(row.score)
    total_dropped = sum(dropped.values())
    if total_dropped:
        logger.warning("dropped %d of %d rows with out-of-vocabulary words", total_dropped, len(dataset))
    if total_dropped == len(dataset):
        raise EvaluationError("No usable rows in the phrase similarity dataset.")

    results: Dict[str, CategoryResult] = {}
    for category in sorted(model):
        rho = p_value = float("nan")
        try:
            result = spearman_rho(model[category], human[category])
            rho, p_value = result.rho, result.p_value
        except (ParameterError, StatisticsError) as exc:
            logger.warning("category %s: %s", category, exc)
        results[category] = CategoryResult(
            category=category,
            rho=rho,
            p_value=p_value,
            n_used=len(model[category]),
            n_dropped=dropped[category],
        )
    return results
