from __future__ import annotations

from typing import List, Tuple

import numpy as np

from ..errors import ParameterError
from .rng import make_rng


def planted_pair_tokens(n_pairs: int) -> List[Tuple[str, str]]:
    return [(f"s{k}", f"t{k}") for k in range(n_pairs)]


def emit_planted_corpus(
    n_pairs: int,
    occurrences: int,
    reverse_fraction: float,
    seed: int,
    *,
    n_background: int = 200,
    topic_size: int = 12,
    topic_share: float = 0.7,
    solo_occurrences: int = 10,
    side: int = 5,
) -> List[List[str]]:
    """Token emitter for integration tests.

    Pair ``k`` occurs as "s{k} t{k}" surrounded by words of its own topic, and
    ``reverse_fraction`` as often as "t{k} s{k}" surrounded by a distinct topic.
    Each constituent also occurs alone among background words.
    """

    if n_pairs < 1 or occurrences < 1:
        raise ParameterError("n_pairs and occurrences must be >= 1.")
    if not 0.0 <= reverse_fraction <= 1.0 or not 0.0 <= topic_share <= 1.0:
        raise ParameterError("reverse_fraction and topic_share must lie in [0, 1].")
    rng = make_rng(seed, "emitter")
    background = [f"bg{i}" for i in range(n_background)]
    weights = 1.0 / np.arange(1, n_background + 1)
    weights /= weights.sum()

    def context(topic: List[str]) -> List[str]:
        words = []
        for _ in range(side):
            if rng.random() < topic_share:
                words.append(topic[int(rng.integers(len(topic)))])
            else:
                words.append(background[int(rng.choice(n_background, p=weights))])
        return words

    sentences: List[List[str]] = []
    for k, (s, t) in enumerate(planted_pair_tokens(n_pairs)):
        forward_topic = [f"a{k}_{j}" for j in range(topic_size)]
        reverse_topic = [f"r{k}_{j}" for j in range(topic_size)]
        for _ in range(occurrences):
            sentences.append(context(forward_topic) + [s, t] + context(forward_topic))
        for _ in range(int(round(occurrences * reverse_fraction))):
            sentences.append(context(reverse_topic) + [t, s] + context(reverse_topic))
        for word in (s, t):
            for _ in range(solo_occurrences):
                sentences.append(context(background) + [word] + context(background))
    order = rng.permutation(len(sentences))
    return [sentences[i] for i in order]


def render_corpus(sentences: List[List[str]]) -> str:
    return "".join(" ".join(sentence) + "\n" for sentence in sentences)
