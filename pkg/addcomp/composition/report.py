from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..corpus.table import CoocTable
from ..corpus.targets import TargetKey, TargetKind
from ..corpus.vocab import WordRef
from ..errors import ReportError
from ..vectors.space import VectorSpace
from .additive import bias_bound, collocation_pi, compose_additive, phrase_key, resolve_mode

logger = logging.getLogger(__name__)

SCATTER_HEADER = ("phrase", "pi1", "pi2", "bound", "bias")


@dataclass(frozen=True)
class BiasRecord:
    phrase: str
    bias: float
    pi1: float
    pi2: float
    bound: float
    bias_reversed: Optional[float] = None
    prefers_order: Optional[bool] = None

    def within(self, epsilon: float) -> bool:
        return self.bias <= self.bound + epsilon

    def row(self, nearfar: bool) -> Tuple[object, ...]:
        base = (self.phrase, self.pi1, self.pi2, self.bound, self.bias)
        if not nearfar:
            return base
        return base + (float("nan") if self.bias_reversed is None else self.bias_reversed,)


@dataclass(frozen=True)
class BiasReport:
    records: Tuple[BiasRecord, ...]
    epsilon: float
    nearfar: bool

    @property
    def header(self) -> Tuple[str, ...]:
        return SCATTER_HEADER + (("bias_reversed",) if self.nearfar else ())

    def rows(self) -> List[Tuple[object, ...]]:
        return [record.row(self.nearfar) for record in self.records]

    def summary(self) -> Dict[str, object]:
        count = len(self.records)
        within = sum(1 for record in self.records if record.within(self.epsilon))
        summary: Dict[str, object] = {
            "count": count,
            "epsilon": self.epsilon,
            "mean_bias": float(np.mean([record.bias for record in self.records])),
            "violation_fraction": (count - within) / count,
            "within_fraction": within / count,
        }
        if self.nearfar:
            reversed_values = [r.bias_reversed for r in self.records if r.bias_reversed is not None]
            preferences = [r.prefers_order for r in self.records if r.prefers_order is not None]
            summary["reversed_count"] = len(reversed_values)
            summary["mean_bias_reversed"] = float(np.mean(reversed_values)) if reversed_values else float("nan")
            summary["order_preference"] = (
                sum(preferences) / len(preferences) if preferences else float("nan")
            )
        return summary


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    denominator = float(np.linalg.norm(u) * np.linalg.norm(v))
    if denominator == 0.0:
        return float("nan")
    return float(np.dot(u, v)) / denominator


def bias_report(
    space: VectorSpace,
    cooc: CoocTable,
    phrases: Sequence[Tuple[WordRef, WordRef]],
    mode: Optional[str] = None,
    *,
    epsilon: float = 0.0,
) -> BiasReport:
    """Bias and bound of every phrase; in Near-far mode also the reversed-order bias."""

    mode = resolve_mode(cooc.nearfar, mode)
    resolve_mode(space.nearfar, mode)
    if not phrases:
        raise ReportError("no phrases: the bias report needs at least one phrase.")
    nearfar = mode == "nearfar"
    records: List[BiasRecord] = []
    for s, t in phrases:
        key = phrase_key(space, s, t)
        composed = compose_additive(space, s, t)
        target = space.natural_vector(key)
        pi1, pi2 = collocation_pi(cooc, s, t, mode)
        bias_reversed = prefers = None
        if nearfar:
            reverse_key = TargetKey.ordered(key.words[1], key.words[0])
            if reverse_key in space:
                reversed_target = space.natural_vector(reverse_key)
                bias_reversed = float(np.linalg.norm(reversed_target - composed))
                prefers = cosine(composed, target) > cosine(composed, reversed_target)
        records.append(
            BiasRecord(
                phrase=key.render(space.vocab),
                bias=float(np.linalg.norm(target - composed)),
                pi1=pi1,
                pi2=pi2,
                bound=bias_bound(pi1, pi2),
                bias_reversed=bias_reversed,
                prefers_order=prefers,
            )
        )
    report = BiasReport(records=tuple(records), epsilon=float(epsilon), nearfar=nearfar)
    logger.info("bias report: %d phrases, violation fraction %.4f", len(records), report.summary()["violation_fraction"])
    return report


def report_phrases(cooc: CoocTable) -> List[Tuple[int, int]]:
    """Phrase pairs (s, t) of the table whose constituents are counted as well."""

    pairs: List[Tuple[int, int]] = []
    if cooc.nearfar:
        for key in cooc.keys():
            if key.kind is TargetKind.ORDERED:
                s, t = key.words
                if TargetKey.nearfar_left(s) in cooc and TargetKey.nearfar_right(t) in cooc:
                    pairs.append((s, t))
        return pairs
    for key in cooc.keys():
        if key.kind is TargetKind.UNORDERED:
            s, t = key.words
            if TargetKey.unigram(s) in cooc and TargetKey.unigram(t) in cooc:
                pairs.append((s, t))
    return pairs
