from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import CorpusDecodeError, InputFileError, ParameterError, TargetLookupError
from ..utils import format_float, report_header
from .svd import Matrix, SVDResult, truncated_svd

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EmbeddingSet:
    """Reduced target vectors v^t, looked up by rendered target label."""

    labels: Tuple[str, ...]
    vectors: np.ndarray
    normalized: bool = False
    context_factor: Optional[np.ndarray] = None
    sigma: Optional[np.ndarray] = None
    _index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.vectors.ndim != 2 or self.vectors.shape[0] != len(self.labels):
            raise ParameterError("EmbeddingSet needs one vector row per label.")
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(self.labels)})

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def lookup(self, label: str) -> np.ndarray:
        try:
            return self.vectors[self._index[label]]
        except KeyError:
            raise TargetLookupError(f"No embedding for {label}") from None

    def sorted(self) -> "EmbeddingSet":
        order = sorted(range(len(self.labels)), key=self.labels.__getitem__)
        return EmbeddingSet(
            labels=tuple(self.labels[i] for i in order),
            vectors=self.vectors[order],
            normalized=self.normalized,
            context_factor=self.context_factor,
            sigma=self.sigma,
        )

    def unit_vectors(self) -> np.ndarray:
        norms = np.linalg.norm(self.vectors, axis=1, keepdims=True)
        return np.divide(self.vectors, norms, out=np.zeros_like(self.vectors), where=norms > 0)

    def normalize(self) -> "EmbeddingSet":
        norms = np.linalg.norm(self.vectors, axis=1)
        keep = norms > 0
        if not np.all(keep):
            dropped = [label for label, ok in zip(self.labels, keep) if not ok]
            logger.warning("excluding %d zero vectors from the normalized set (first: %s)", len(dropped), dropped[0])
        return EmbeddingSet(
            labels=tuple(label for label, ok in zip(self.labels, keep) if ok),
            vectors=self.vectors[keep] / norms[keep, None],
            normalized=True,
            context_factor=self.context_factor,
            sigma=self.sigma,
        )


def embed(
    space_matrix: Matrix,
    d: int,
    normalize: bool,
    seed: int,
    labels: Sequence[str],
    *,
    oversample: int = 10,
    power_iters: int = 2,
) -> Tuple[EmbeddingSet, SVDResult]:
    """Rows of ``space_matrix`` are the natural vectors; v^t is the matching row of U sqrt(Σ)."""

    result = truncated_svd(space_matrix, d, oversample=oversample, power_iters=power_iters, seed=seed)
    root = np.sqrt(result.sigma)
    embeddings = EmbeddingSet(
        labels=tuple(labels),
        vectors=result.U * root,
        context_factor=result.V * root,
        sigma=result.sigma,
    )
    if normalize:
        embeddings = embeddings.normalize()
    return embeddings, result


def render_embeddings(embeddings: EmbeddingSet, *, config_hash: Optional[str] = None, seed: Optional[int] = None) -> str:
    lines: List[str] = [report_header(config_hash, seed)]
    for label, vector in zip(embeddings.labels, embeddings.vectors):
        lines.append(label + "\t" + " ".join(format_float(v) for v in vector) + "\n")
    return "".join(lines)


def read_embeddings(path: Path) -> EmbeddingSet:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Embedding file not found: {path}")
    labels: List[str] = []
    rows: List[List[float]] = []
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                label, values = line.rstrip("\n").split("\t", 1)
                rows.append([float(v) for v in values.split()])
            except ValueError:
                raise CorpusDecodeError(f"{path}:{number}: malformed embedding line") from None
            labels.append(label)
    if not rows:
        raise CorpusDecodeError(f"{path}: no embeddings")
    if len({len(row) for row in rows}) != 1:
        raise CorpusDecodeError(f"{path}: embeddings have inconsistent dimensions")
    return EmbeddingSet(labels=tuple(labels), vectors=np.asarray(rows, dtype=np.float64))
