from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..composition.neighbors import nearest_neighbors
from ..errors import EvaluationError
from ..reduce.embedding import EmbeddingSet
from .datasets import AnalogyDataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnalogyResult:
    accuracy: float
    n_correct: int
    n_used: int
    n_dropped: int

    def as_dict(self) -> Dict[str, object]:
        return {
            "accuracy": self.accuracy,
            "n_correct": self.n_correct,
            "n_dropped": self.n_dropped,
            "n_used": self.n_used,
        }


def analogy_solve(embeddings: EmbeddingSet, a: str, b: str, c: str, exclude_inputs: bool = True) -> str:
    """The label most cosine-similar to v^b - v^a + v^c."""

    query = embeddings.lookup(b) - embeddings.lookup(a) + embeddings.lookup(c)
    exclude = (a, b, c) if exclude_inputs else ()
    ranked = nearest_neighbors(embeddings.labels, embeddings.vectors, query, 1, exclude=exclude)
    if not ranked:
        raise EvaluationError("No candidate left for the analogy query.")
    return ranked[0][0]


def analogy_eval(embeddings: EmbeddingSet, dataset: AnalogyDataset, exclude_inputs: bool = True) -> AnalogyResult:
    usable = [row for row in dataset.rows if all(word in embeddings for word in row)]
    dropped = len(dataset) - len(usable)
    if dropped:
        logger.warning("dropped %d of %d analogy rows with out-of-vocabulary words", dropped, len(dataset))
    if not usable:
        raise EvaluationError("No usable rows in the analogy dataset.")
    correct = sum(1 for a, b, c, d in usable if analogy_solve(embeddings, a, b, c, exclude_inputs) == d)
    return AnalogyResult(
        accuracy=correct / len(usable),
        n_correct=correct,
        n_used=len(usable),
        n_dropped=dropped,
    )


def planted_lexicon(n_concepts: int = 5, n_aspects: int = 4) -> Tuple[EmbeddingSet, AnalogyDataset]:
    """Words c{i}a{j} embedded as concept one-hot plus aspect one-hot, with every valid 4-tuple.

    A tuple (c_i a_j, c_i a_k, c_l a_j, c_l a_k) with i != l and j != k is
    solved exactly by the additive offset.
    """

    labels: List[str] = []
    vectors: List[np.ndarray] = []
    for i in range(n_concepts):
        for j in range(n_aspects):
            vector = np.zeros(n_concepts + n_aspects)
            vector[i] = 1.0
            vector[n_concepts + j] = 1.0
            labels.append(f"c{i}a{j}")
            vectors.append(vector)
    rows = []
    for i, l in itertools.permutations(range(n_concepts), 2):
        for j, k in itertools.permutations(range(n_aspects), 2):
            rows.append((f"c{i}a{j}", f"c{i}a{k}", f"c{l}a{j}", f"c{l}a{k}"))
    return EmbeddingSet(labels=tuple(labels), vectors=np.asarray(vectors)), AnalogyDataset(tuple(rows))
