from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..corpus.table import CoocTable
from ..corpus.targets import TargetKey, TargetKind
from ..corpus.vocab import Vocabulary
from ..errors import NormalizationError, ParameterError, StatisticsError, TargetLookupError
from .transform import FSpec

logger = logging.getLogger(__name__)

OFFSET_MODES = ("computed", "zero")
DEFAULT_BATCH = 512


@dataclass(frozen=True, eq=False)
class VectorSpace:
    """Natural vectors w^Υ = c (F(p^Υ + 1/n) - a^Υ - b) over a counted table.

    Vectors are recomputed from the sparse counts on demand, so the space only
    holds the normalization constants.
    """

    fspec: FSpec
    table: CoocTable
    phrase_keys: Tuple[TargetKey, ...]
    b: np.ndarray
    a: Dict[TargetKey, float]
    c: float
    offsets: str = "computed"
    _smoothing: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_smoothing", 1.0 / self.dimension)

    @property
    def dimension(self) -> int:
        return self.table.context_size

    @property
    def vocab(self) -> Vocabulary:
        return self.table.vocab

    @property
    def nearfar(self) -> bool:
        return self.table.nearfar

    @property
    def lam(self) -> float:
        return self.fspec.lam

    def __contains__(self, key: object) -> bool:
        return key in self.a

    def keys(self, kind: Optional[TargetKind] = None) -> List[TargetKey]:
        return self.table.keys(kind)

    def natural_vector(self, key: TargetKey) -> np.ndarray:
        if key not in self.a:
            raise TargetLookupError(f"No natural vector for target {key.render(self.vocab)}")
        transformed = self.fspec(self.table.probabilities(key) + self._smoothing)
        return self.c * (transformed - self.a[key] - self.b)

    def iter_vectors(
        self, keys: Sequence[TargetKey], batch_size: int = DEFAULT_BATCH
    ) -> Iterator[Tuple[List[TargetKey], np.ndarray]]:
        """Yield (keys, matrix) batches of at most ``batch_size`` rows."""

        for start in range(0, len(keys), batch_size):
            chunk = list(keys[start : start + batch_size])
            missing = [key for key in chunk if key not in self.a]
            if missing:
                raise TargetLookupError(f"No natural vector for target {missing[0].render(self.vocab)}")
            transformed = _transformed_batch(self.table, chunk, self.fspec, self._smoothing)
            offsets = np.asarray([self.a[key] for key in chunk])[:, None]
            yield chunk, self.c * (transformed - offsets - self.b)

    def matrix(self, keys: Sequence[TargetKey], batch_size: int = DEFAULT_BATCH) -> np.ndarray:
        out = np.empty((len(keys), self.dimension), dtype=np.float64)
        row = 0
        for chunk, block in self.iter_vectors(keys, batch_size):
            out[row : row + len(chunk)] = block
            row += len(chunk)
        return out

    def norms(self, keys: Sequence[TargetKey], batch_size: int = DEFAULT_BATCH) -> np.ndarray:
        values: List[np.ndarray] = []
        for _, block in self.iter_vectors(keys, batch_size):
            values.append(np.linalg.norm(block, axis=1))
        return np.concatenate(values) if values else np.zeros(0)


def _transformed_batch(table: CoocTable, keys: Sequence[TargetKey], fspec: FSpec, smoothing: float) -> np.ndarray:
    dense = table.to_csr(keys).toarray().astype(np.float64)
    totals = dense.sum(axis=1, keepdims=True)
    np.divide(dense, totals, out=dense, where=totals > 0)
    return fspec(dense + smoothing)


def default_phrase_keys(table: CoocTable) -> List[TargetKey]:
    """Λ_n: unordered bigrams in an ordinary table, ordered bigrams in a Near-far table."""

    kind = TargetKind.ORDERED if table.nearfar else TargetKind.UNORDERED
    return table.keys(kind)


def build_space(
    cooc: CoocTable,
    lam: float,
    phrase_set: Optional[Sequence[TargetKey]] = None,
    *,
    offsets: str = "computed",
    batch_size: int = DEFAULT_BATCH,
) -> VectorSpace:
    """Normalize the F-transformed probabilities of every target in ``cooc``.

    a^Υ is the entry mean of F(p^Υ + 1/n) (or 0 when ``offsets`` is "zero"),
    b is the centroid of the a-centred phrase vectors and c scales the mean
    phrase norm to 1.
    """

    if offsets not in OFFSET_MODES:
        raise ParameterError(f"offsets must be one of {', '.join(OFFSET_MODES)}; got {offsets!r}.")
    if batch_size < 1:
        raise ParameterError("batch_size must be >= 1.")
    fspec = FSpec(lam)
    phrases = tuple(phrase_set) if phrase_set is not None else tuple(default_phrase_keys(cooc))
    if not phrases:
        raise NormalizationError("The phrase set used for normalization is empty.")
    for key in phrases:
        if key not in cooc:
            raise TargetLookupError(f"Phrase {key.render(cooc.vocab)} has no counts in the table.")
    n = cooc.context_size
    smoothing = 1.0 / n

    a: Dict[TargetKey, float] = {}
    all_keys = cooc.keys()
    for start in range(0, len(all_keys), batch_size):
        chunk = all_keys[start : start + batch_size]
        if offsets == "zero":
            a.update((key, 0.0) for key in chunk)
            continue
        means = _transformed_batch(cooc, chunk, fspec, smoothing).mean(axis=1)
        a.update(zip(chunk, means.tolist()))

    # Kahan-compensated centroid over phrase batches.
    total = np.zeros(n, dtype=np.float64)
    compensation = np.zeros(n, dtype=np.float64)
    for start in range(0, len(phrases), batch_size):
        chunk = phrases[start : start + batch_size]
        centred = _transformed_batch(cooc, chunk, fspec, smoothing)
        centred -= np.asarray([a[key] for key in chunk])[:, None]
        y = centred.sum(axis=0) - compensation
        t = total + y
        compensation = (t - total) - y
        total = t
    b = total / len(phrases)

    norm_sum = 0.0
    for start in range(0, len(phrases), batch_size):
        chunk = phrases[start : start + batch_size]
        centred = _transformed_batch(cooc, chunk, fspec, smoothing)
        centred -= np.asarray([a[key] for key in chunk])[:, None]
        centred -= b
        norm_sum += float(np.linalg.norm(centred, axis=1).sum())
    mean_norm = norm_sum / len(phrases)
    if not np.isfinite(mean_norm) or mean_norm <= 0.0:
        raise NormalizationError(
            f"Phrase vectors collapse onto their centroid (mean norm {mean_norm:g}); c is undefined."
        )
    c = 1.0 / mean_norm
    logger.info("lambda=%g: %d targets, %d phrases, c=%.6g", lam, len(all_keys), len(phrases), c)
    return VectorSpace(fspec=fspec, table=cooc, phrase_keys=phrases, b=b, a=a, c=c, offsets=offsets)


@dataclass(frozen=True)
class NormStatistics:
    kind: str
    count: int
    mean: float
    std: float
    bin_edges: np.ndarray
    bin_counts: np.ndarray

    def histogram_rows(self) -> List[Tuple[float, float, int]]:
        return [
            (float(self.bin_edges[i]), float(self.bin_edges[i + 1]), int(self.bin_counts[i]))
            for i in range(self.bin_counts.size)
        ]


def norm_statistics(space: VectorSpace, target_kind: TargetKind, *, bins: int = 20) -> NormStatistics:
    keys = space.keys(target_kind)
    if len(keys) < 2:
        raise StatisticsError(f"Norm statistics need at least 2 targets of kind {target_kind.value}; got {len(keys)}.")
    norms = space.norms(keys)
    counts, edges = np.histogram(norms, bins=bins)
    return NormStatistics(
        kind=target_kind.value,
        count=int(norms.size),
        mean=float(norms.mean()),
        std=float(norms.std()),
        bin_edges=edges,
        bin_counts=counts,
    )


def norm_grid(
    cooc: CoocTable,
    lambdas: Sequence[float],
    kinds: Sequence[TargetKind],
    *,
    offsets: str = "computed",
) -> List[Tuple[float, str, float, float]]:
    """(lambda, kind, mean norm, std of norms) for every lambda and target kind."""

    rows: List[Tuple[float, str, float, float]] = []
    for lam in lambdas:
        space = build_space(cooc, lam, offsets=offsets)
        for kind in kinds:
            stats = norm_statistics(space, kind)
            rows.append((float(lam), kind.value, stats.mean, stats.std))
    return rows
