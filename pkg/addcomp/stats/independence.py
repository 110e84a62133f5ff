from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..corpus.table import CoocTable
from ..corpus.targets import TargetKey, TargetKind
from ..errors import ParameterError, ReportError, StatisticsError
from ..genmodel.rng import make_rng
from .chisq import categorize
from .correlation import spearman_rho

logger = logging.getLogger(__name__)

PAIR_KINDS = ("unigram", "phrase", "exclusion", "exclusion-phrase")
BIN_WIDTH = 0.05


@dataclass(frozen=True)
class IndependenceReport:
    pair_kind: str
    rhos: np.ndarray
    skipped: int
    bin_edges: np.ndarray
    bin_counts: np.ndarray

    def rows(self) -> List[Tuple[float, float, int]]:
        return [
            (float(self.bin_edges[i]), float(self.bin_edges[i + 1]), int(self.bin_counts[i]))
            for i in range(self.bin_counts.size)
        ]

    def summary(self) -> Dict[str, object]:
        return {
            "pair_kind": self.pair_kind,
            "count": int(self.rhos.size),
            "skipped": self.skipped,
            "mean_rho": float(self.rhos.mean()),
            "within_0.1": float(np.mean(np.abs(self.rhos) <= 0.1)),
        }


def context_probabilities(cooc: CoocTable) -> np.ndarray:
    """p_i of every context dimension; Near-far labels split a word's mass evenly."""

    p = cooc.vocab.probabilities()
    if cooc.nearfar:
        p = np.repeat(p / 2.0, 2)
    return p


def _row_probabilities(cooc: CoocTable, keys: Sequence[TargetKey]) -> sparse.csc_matrix:
    counts = cooc.to_csr(keys).astype(np.float64)
    totals = np.asarray(counts.sum(axis=1)).ravel()
    totals[totals == 0] = 1.0
    return sparse.csc_matrix(sparse.diags(1.0 / totals) @ counts)


def _column(matrix: sparse.csc_matrix, i: int) -> np.ndarray:
    return matrix[:, [i]].toarray().ravel()


def _pair_keys(cooc: CoocTable) -> List[Tuple[TargetKey, TargetKey, TargetKey]]:
    """(first exclusion, second exclusion, phrase) triples for every counted bigram."""

    triples = []
    if cooc.nearfar:
        for key in cooc.keys(TargetKind.ORDERED):
            s, t = key.words
            left, right = TargetKey.nearfar_excl_left(s, t), TargetKey.nearfar_excl_right(t, s)
            if left in cooc and right in cooc:
                triples.append((left, right, key))
        return triples
    for key in cooc.keys(TargetKind.UNORDERED):
        s, t = key.words
        first, second = TargetKey.exclusion(s, t), TargetKey.exclusion(t, s)
        if first in cooc and second in cooc:
            triples.append((first, second, key))
    return triples


def independence_report(cooc: CoocTable, pair_kind: str, n_pairs: int, seed: int) -> IndependenceReport:
    """Histogram of Spearman's rho between probability series that should be unrelated.

    ``unigram`` and ``phrase`` sample dimension pairs (i, j) and correlate
    p_i with p_j across targets of that kind; ``exclusion`` correlates the two
    exclusion targets of each bigram in a sampled dimension; ``exclusion-phrase``
    correlates an exclusion target with its bigram.
    """

    if pair_kind not in PAIR_KINDS:
        raise ParameterError(f"pair_kind must be one of {', '.join(PAIR_KINDS)}; got {pair_kind!r}.")
    if n_pairs < 1:
        raise ParameterError("n_pairs must be >= 1.")
    rng = make_rng(seed, "independence", pair_kind)

    if pair_kind in ("unigram", "phrase"):
        if pair_kind == "unigram":
            kind = TargetKind.NEARFAR_LEFT if cooc.nearfar else TargetKind.UNIGRAM
        else:
            kind = TargetKind.ORDERED if cooc.nearfar else TargetKind.UNORDERED
        keys = cooc.keys(kind)
        if len(keys) < 3:
            raise ReportError(f"Independence report needs at least 3 {pair_kind} targets; got {len(keys)}.")
        probs = _row_probabilities(cooc, keys)
        active = np.flatnonzero(np.diff(probs.indptr))
        if active.size < 2:
            raise ReportError("Fewer than 2 context dimensions carry counts.")
        series = []
        for _ in range(n_pairs):
            i, j = rng.choice(active, size=2, replace=False)
            series.append((_column(probs, int(i)), _column(probs, int(j))))
    else:
        triples = _pair_keys(cooc)
        if len(triples) < 3:
            raise ReportError(f"Independence report needs at least 3 bigrams with exclusion targets; got {len(triples)}.")
        first = _row_probabilities(cooc, [triple[0] for triple in triples])
        other_keys = [triple[1] if pair_kind == "exclusion" else triple[2] for triple in triples]
        second = _row_probabilities(cooc, other_keys)
        active = np.flatnonzero(np.diff(first.indptr) + np.diff(second.indptr))
        if active.size < 1:
            raise ReportError("No context dimension carries counts.")
        series = []
        for i in rng.choice(active, size=n_pairs, replace=True):
            series.append((_column(first, int(i)), _column(second, int(i))))

    rhos: List[float] = []
    skipped = 0
    for xs, ys in series:
        try:
            rhos.append(spearman_rho(xs, ys).rho)
        except StatisticsError:
            skipped += 1
    if skipped:
        logger.warning("skipped %d of %d constant series", skipped, len(series))
    if not rhos:
        raise ReportError("Every sampled series was constant; no correlation could be computed.")
    values = np.asarray(rhos)
    edges = np.linspace(-1.0, 1.0, int(round(2.0 / BIN_WIDTH)) + 1)
    counts, _ = np.histogram(values, bins=edges)
    return IndependenceReport(pair_kind=pair_kind, rhos=values, skipped=skipped, bin_edges=edges, bin_counts=counts)


def probability_ratios(cooc: CoocTable, key: TargetKey) -> np.ndarray:
    """X_i = p^Υ_i / p_i over every context dimension with p_i > 0."""

    p = context_probabilities(cooc)
    conditional = cooc.probabilities(key)
    mask = p > 0
    return conditional[mask] / p[mask]


def context_ratios(cooc: CoocTable, i: int) -> np.ndarray:
    """X = p^T_i / p_i for context dimension ``i`` across the word targets T."""

    p = context_probabilities(cooc)
    if not 0 <= i < p.size or p[i] <= 0:
        raise ParameterError(f"Context dimension {i} has no probability mass.")
    kind = TargetKind.NEARFAR_LEFT if cooc.nearfar else TargetKind.UNIGRAM
    keys = cooc.keys(kind)
    if not keys:
        raise ReportError("The table has no word targets.")
    return _column(_row_probabilities(cooc, keys), i) / p[i]


def ratio_categories(cooc: CoocTable, i: int) -> np.ndarray:
    """The five chi-square category counts of X = p^T_i / p_i across word targets T."""

    return categorize(context_ratios(cooc, i))


def ranked_ratio_profile(cooc: CoocTable, kind: TargetKind, top: int = 100) -> np.ndarray:
    """Average of the r-th largest X_i across targets of ``kind``, r = 1..top."""

    keys = cooc.keys(kind)
    if not keys:
        raise ReportError(f"The table has no targets of kind {kind.value}.")
    p = context_probabilities(cooc)
    mask = p > 0
    top = min(top, int(mask.sum()))
    total = np.zeros(top, dtype=np.float64)
    for key in keys:
        ratios = cooc.probabilities(key)[mask] / p[mask]
        total += -np.sort(-ratios)[:top]
    return total / len(keys)
