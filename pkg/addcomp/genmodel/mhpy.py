from __future__ import annotations

import copy
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from .params import MHPYParams
from .rng import UniformStream, make_rng

logger = logging.getLogger(__name__)

RECOMPUTE_EVERY = 1 << 16


@dataclass(frozen=True)
class MHPYState:
    """Final state of a Modified Hierarchical Pitman-Yor run.

    ``ref_counts[r]`` is C(ϱ) and ``ref_word[r]`` the word it refers to;
    ``word_refs[w]`` is N_r(ϖ) and ``word_counts[w]`` is C(ϖ).
    """

    params: MHPYParams
    ref_counts: np.ndarray
    ref_word: np.ndarray
    word_refs: np.ndarray
    word_counts: np.ndarray
    normalizer: float
    seed: int
    max_drift: float = 0.0

    @property
    def total(self) -> int:
        return int(self.word_counts.sum())

    @property
    def n_refs(self) -> int:
        return int(self.ref_counts.size)

    @property
    def n_words(self) -> int:
        return int(self.word_counts.size)

    def word_weights(self) -> np.ndarray:
        p = self.params
        refs = self.word_refs.astype(np.float64)
        return (refs - p.alpha2) * (self.word_counts + p.theta1) / (p.theta1 + p.alpha1 * refs)

    def recompute_normalizer(self) -> float:
        p = self.params
        return p.theta2 + p.alpha2 * self.n_words + math.fsum(self.word_weights())

    def conditional_distribution(self) -> np.ndarray:
        """p^Υ(ϖ) = C(ϖ) / C."""

        return self.word_counts / float(self.total)

    def reference_distribution(self) -> np.ndarray:
        """p(ϖ) = N_r(ϖ) / N_r."""

        return self.word_refs / float(self.n_refs)

    def tail_ratios(self) -> np.ndarray:
        """p^Υ(ϖ) / p(ϖ)^(1/alpha1) for every word."""

        return self.conditional_distribution() / self.reference_distribution() ** (1.0 / self.params.alpha1)


def step_probabilities(state: MHPYState) -> Tuple[float, np.ndarray, np.ndarray]:
    """Probabilities of the three next-step moves.

    Returns the probability of a new reference to a new word, the per-word
    probabilities of a new reference to an existing word, and the per-reference
    probabilities of copying a reference.
    """

    p = state.params
    normalizer = state.recompute_normalizer()
    refs = state.word_refs.astype(np.float64)
    new_word = (p.theta2 + p.alpha2 * state.n_words) / normalizer
    new_ref = (refs - p.alpha2) / normalizer
    word_factor = (refs - p.alpha2) / (p.theta1 + p.alpha1 * refs)
    copy = word_factor[state.ref_word] * (state.ref_counts - p.alpha1) / normalizer
    return float(new_word), new_ref, copy


class MHPYRun:
    """Sequential MHPY sampler.

    With ``base_cdf`` set, words are context ids: a new reference to a new word
    draws its id from the shared base, and a draw that hits a word already in
    the run becomes one more reference to it.
    """

    def __init__(self, params: MHPYParams, uniforms: UniformStream, *, base_cdf: Optional[np.ndarray] = None) -> None:
        self.params = params
        self.uniforms = uniforms
        self.base_cdf = base_cdf
        self.ref_counts: List[int] = []
        self.ref_word: List[int] = []
        self.word_refs: List[int] = []
        self.word_counts: List[int] = []
        self.word_tokens: List[List[int]] = []
        self.word_context: List[int] = []
        self.context_word: Dict[int, int] = {}
        self.weights = np.zeros(1024, dtype=np.float64)
        self.normalizer = params.theta2
        self.max_drift = 0.0
        self.steps = 0

    def _weight(self, word: int) -> float:
        p = self.params
        refs = self.word_refs[word]
        return (refs - p.alpha2) * (self.word_counts[word] + p.theta1) / (p.theta1 + p.alpha1 * refs)

    def _new_reference(self, word: int) -> None:
        ref = len(self.ref_counts)
        self.ref_counts.append(1)
        self.ref_word.append(word)
        self.word_refs[word] += 1
        self.word_counts[word] += 1
        self.word_tokens[word].append(ref)

    def _copy_reference(self, word: int) -> None:
        alpha1 = self.params.alpha1
        tokens = self.word_tokens[word]
        # Propose proportional to C(ϱ), accept with (C(ϱ) - alpha1) / C(ϱ).
        while True:
            ref = tokens[int(self.uniforms.next() * len(tokens))]
            count = self.ref_counts[ref]
            if self.uniforms.next() * count < count - alpha1:
                break
        self.ref_counts[ref] += 1
        self.word_counts[word] += 1
        tokens.append(ref)

    def _add_word(self, context: int) -> int:
        word = len(self.word_refs)
        self.word_refs.append(0)
        self.word_counts.append(0)
        self.word_tokens.append([])
        self.word_context.append(context)
        self.context_word[context] = word
        if word >= self.weights.size:
            grown = np.zeros(self.weights.size * 2, dtype=np.float64)
            grown[: self.weights.size] = self.weights
            self.weights = grown
        self.normalizer += self.params.alpha2
        return word

    def _fresh_word(self) -> int:
        if self.base_cdf is None:
            return self._add_word(len(self.word_refs))
        n = self.base_cdf.size
        context = min(int(np.searchsorted(self.base_cdf, self.uniforms.next(), side="right")), n - 1)
        word = self.context_word.get(context)
        return self._add_word(context) if word is None else word

    def step(self) -> None:
        p = self.params
        n_words = len(self.word_refs)
        base = p.theta2 + p.alpha2 * n_words
        u = self.uniforms.next() * self.normalizer
        if n_words == 0 or u < base:
            word = self._fresh_word()
            self._new_reference(word)
        else:
            cumulative = np.cumsum(self.weights[:n_words])
            word = int(np.searchsorted(cumulative, u - base, side="right"))
            word = min(word, n_words - 1)
            threshold = p.theta1 + p.alpha1 * self.word_refs[word]
            if self.uniforms.next() * (self.word_counts[word] + p.theta1) < threshold:
                self._new_reference(word)
            else:
                self._copy_reference(word)
        new_weight = self._weight(word)
        self.normalizer += new_weight - self.weights[word]
        self.weights[word] = new_weight
        self.steps += 1
        if self.steps % RECOMPUTE_EVERY == 0:
            self.resynchronise()

    def advance(self, steps: int) -> "MHPYRun":
        for _ in range(steps):
            self.step()
        return self

    def fork(self, uniforms: UniformStream) -> "MHPYRun":
        """An independent continuation of this run driven by ``uniforms``."""

        twin = copy.copy(self)
        twin.uniforms = uniforms
        twin.ref_counts = list(self.ref_counts)
        twin.ref_word = list(self.ref_word)
        twin.word_refs = list(self.word_refs)
        twin.word_counts = list(self.word_counts)
        twin.word_tokens = [list(tokens) for tokens in self.word_tokens]
        twin.word_context = list(self.word_context)
        twin.context_word = dict(self.context_word)
        twin.weights = self.weights.copy()
        return twin

    def context_counts(self, n_context: int) -> np.ndarray:
        """C(ϖ) laid out by context id."""

        counts = np.zeros(n_context, dtype=np.int64)
        if self.word_counts:
            np.add.at(counts, np.asarray(self.word_context, dtype=np.int64), np.asarray(self.word_counts, dtype=np.int64))
        return counts

    def resynchronise(self) -> None:
        n_words = len(self.word_refs)
        exact = self.params.theta2 + self.params.alpha2 * n_words + math.fsum(self.weights[:n_words])
        drift = abs(exact - self.normalizer)
        self.max_drift = max(self.max_drift, drift)
        if drift > 1e-9 * max(1.0, exact):
            logger.warning("MHPY normaliser drifted by %.3g; resynchronised", drift)
        self.normalizer = exact

    def state(self, seed: int) -> MHPYState:
        return MHPYState(
            params=self.params,
            ref_counts=np.asarray(self.ref_counts, dtype=np.int64),
            ref_word=np.asarray(self.ref_word, dtype=np.int64),
            word_refs=np.asarray(self.word_refs, dtype=np.int64),
            word_counts=np.asarray(self.word_counts, dtype=np.int64),
            normalizer=self.normalizer,
            seed=seed,
            max_drift=self.max_drift,
        )


def sample_mhpy(params: MHPYParams, steps: int, seed: int, *, stream: str = "mhpy") -> MHPYState:
    if steps < 1:
        raise ParameterError("steps must be >= 1.")
    run = MHPYRun(params, UniformStream(make_rng(seed, stream))).advance(steps)
    run.resynchronise()
    logger.info("MHPY: %d steps, %d references, %d words", steps, len(run.ref_counts), len(run.word_refs))
    return run.state(seed)
