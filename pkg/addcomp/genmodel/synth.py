from __future__ import annotations

import logging
from typing import Dict, Optional

import numpy as np

from ..corpus.table import CoocBuilder, CoocTable
from ..corpus.targets import ContextConfig, TargetKey
from ..corpus.vocab import Vocabulary
from ..errors import ParameterError
from .crp import sample_pitman_yor
from .mhpy import MHPYRun
from .params import MHPYParams, PYParams
from .rng import UniformStream, make_rng

logger = logging.getLogger(__name__)


def shared_base(context_process: PYParams, n_context: int, seed: int, *, steps: Optional[int] = None) -> np.ndarray:
    """Counts of the ``n_context`` most frequent words of one Pitman-Yor draw, rank-sorted."""

    if n_context < 1:
        raise ParameterError("n_context must be >= 1.")
    steps = steps if steps is not None else max(100 * n_context, 10_000)
    state = sample_pitman_yor(context_process, steps, seed, stream="synth-base")
    ranked = state.ranked_counts()
    if ranked.size < n_context:
        raise ParameterError(
            f"The base process produced {ranked.size} words after {steps} steps; {n_context} are needed."
        )
    return ranked[:n_context]


def base_cdf(base_counts: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(base_counts, dtype=np.float64)
    return cdf / cdf[-1]


def sample_mhpy_counts(cdf: np.ndarray, params: MHPYParams, tokens: int, uniforms: UniformStream) -> np.ndarray:
    """Context counts of one target: an MHPY run of ``tokens`` steps whose new words come from the shared base."""

    return MHPYRun(params, uniforms, base_cdf=cdf).advance(max(tokens, 0)).context_counts(cdf.size)


def synth_cooc(
    target_process: MHPYParams,
    context_process: PYParams,
    n_targets: int,
    tokens_per_target: int,
    phrase_fraction: float,
    seed: int,
    *,
    n_context: int = 5000,
    max_pi: float = 0.6,
    planted_pi: Optional[float] = None,
    base_steps: Optional[int] = None,
) -> CoocTable:
    """Synthetic co-occurrence table with planted phrase structure.

    ``context_process`` draws the shared base over contexts; every target row
    is an MHPY run (``target_process``) referencing that base. Target words are
    the ``n_targets`` most frequent context words and pairs of them form
    phrases {st}. A paired word's run is its phrase run continued for the
    exclusion tokens, so C^t = C^{s/t\\s} + C^{t+s} holds exactly and each
    exclusion row shares the phrase's references. One synthetic occurrence
    carries one context token.
    """

    if n_targets < 2:
        raise ParameterError("n_targets must be >= 2.")
    if tokens_per_target < 1:
        raise ParameterError("tokens_per_target must be >= 1.")
    if not 0.0 <= phrase_fraction <= 1.0:
        raise ParameterError("phrase_fraction must lie in [0, 1].")
    if not 0.0 <= max_pi < 1.0:
        raise ParameterError("max_pi must lie in [0, 1).")
    if planted_pi is not None and not 0.0 <= planted_pi < 1.0:
        raise ParameterError("planted_pi must lie in [0, 1).")
    if n_targets > n_context:
        raise ParameterError("n_targets cannot exceed n_context.")

    base_counts = shared_base(context_process, n_context, seed, steps=base_steps)
    cdf = base_cdf(base_counts)
    vocab = Vocabulary.placeholder(base_counts.tolist())

    pair_rng = make_rng(seed, "synth", "pairs")
    order = pair_rng.permutation(n_targets)
    n_phrases = int(phrase_fraction * n_targets) // 2
    pairs = [tuple(sorted((int(order[2 * k]), int(order[2 * k + 1])))) for k in range(n_phrases)]
    if planted_pi is None:
        pis = pair_rng.uniform(0.0, max_pi, size=(n_phrases, 2))
    else:
        pis = np.full((n_phrases, 2), planted_pi)

    def uniforms(*stream) -> UniformStream:
        return UniformStream(make_rng(seed, "synth", *stream))

    builder = CoocBuilder()
    paired: Dict[int, int] = {}
    for index, (s, t) in enumerate(pairs):
        phrase_run = MHPYRun(target_process, uniforms("phrase", s, t), base_cdf=cdf).advance(tokens_per_target)
        phrase = phrase_run.context_counts(n_context)
        _put(builder, TargetKey.unordered(s, t), phrase)
        for word, partner, pi in ((t, s, pis[index, 0]), (s, t, pis[index, 1])):
            exclusion_tokens = int(round(tokens_per_target * pi / (1.0 - pi)))
            whole = phrase_run.fork(uniforms("exclusion", word)).advance(exclusion_tokens).context_counts(n_context)
            _put(builder, TargetKey.exclusion(word, partner), whole - phrase)
            _put(builder, TargetKey.adjacent(word, partner), phrase)
            _put(builder, TargetKey.unigram(word), whole)
            paired[word] = partner

    for word in range(n_targets):
        if word not in paired:
            counts = sample_mhpy_counts(cdf, target_process, tokens_per_target, uniforms("word", word))
            _put(builder, TargetKey.unigram(word), counts)

    table = builder.build(vocab, vocab.size, ContextConfig())
    logger.info(
        "synthetic table: %d targets, %d phrases, %d context types", len(table), n_phrases, vocab.size
    )
    return table


def _put(builder: CoocBuilder, key: TargetKey, counts: np.ndarray) -> None:
    ids = np.flatnonzero(counts)
    builder.set_row(key, {int(i): int(counts[i]) for i in ids}, int(counts.sum()))
