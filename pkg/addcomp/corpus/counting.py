from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Sequence, Set, Tuple

from ..errors import ParameterError
from .table import CoocBuilder, CoocTable, merge_tables
from .targets import ContextConfig, TargetKey, TargetKind, TargetSet, encode_sentence
from .vocab import Sentence, Vocabulary

logger = logging.getLogger(__name__)


class _ShardCounter:
    """Counts one contiguous run of sentences into a CoocBuilder."""

    def __init__(self, vocab: Vocabulary, targets: TargetSet, config: ContextConfig) -> None:
        self.vocab = vocab
        self.config = config
        self.unigrams: Set[int] = set(targets.unigrams)
        self.ordered: Set[Tuple[int, int]] = set(targets.ordered)
        self.unordered: Set[Tuple[int, int]] = set(targets.unordered)
        partners: Dict[int, Set[int]] = {}
        for s, t in targets.unordered:
            partners.setdefault(t, set()).add(s)
            partners.setdefault(s, set()).add(t)
            self.unigrams.update((s, t))
        for s, t in targets.ordered:
            self.unigrams.update((s, t))
        self.partners = partners

    def count(self, sentences: Sequence[Sentence]) -> CoocBuilder:
        builder = CoocBuilder()
        for sentence in sentences:
            ids = encode_sentence(sentence, self.vocab, self.config.skip_tokens)
            if self.config.nearfar:
                self._count_nearfar(ids, builder)
            else:
                self._count_ordinary(ids, builder)
        return builder

    def _count_ordinary(self, ids: List[int], builder: CoocBuilder) -> None:
        size = len(ids)
        w = self.config.word_window
        pw = self.config.phrase_window
        for j, word in enumerate(ids):
            if word < 0:
                continue
            if word in self.unigrams:
                contexts = _window(ids, j - w, j) + _window(ids, j + 1, j + 1 + w)
                builder.add_contexts(TargetKey.unigram(word), contexts)
                partners = self.partners.get(word)
                if partners:
                    neighbours = set()
                    if j > 0 and ids[j - 1] in partners:
                        neighbours.add(ids[j - 1])
                    if j + 1 < size and ids[j + 1] in partners:
                        neighbours.add(ids[j + 1])
                    for partner in neighbours:
                        builder.add_contexts(TargetKey.adjacent(word, partner), contexts)
            if j + 1 >= size or ids[j + 1] < 0:
                continue
            pair = (word, ids[j + 1])
            canonical = tuple(sorted(pair))
            in_ordered = pair in self.ordered
            in_unordered = canonical in self.unordered
            if not (in_ordered or in_unordered):
                continue
            contexts = _window(ids, j - pw, j) + _window(ids, j + 2, j + 2 + pw)
            if in_ordered:
                builder.add_contexts(TargetKey.ordered(*pair), contexts)
            if in_unordered:
                builder.add_contexts(TargetKey.unordered(*pair), contexts)

    def _count_nearfar(self, ids: List[int], builder: CoocBuilder) -> None:
        size = len(ids)
        for j, word in enumerate(ids):
            if word < 0:
                continue
            if word in self.unigrams:
                # s• skips the right neighbour, •t skips the left neighbour.
                builder.add_contexts(TargetKey.nearfar_left(word), _labelled(ids, j - 1, j + 2))
                builder.add_contexts(TargetKey.nearfar_right(word), _labelled(ids, j - 2, j + 1))
            if j + 1 < size and ids[j + 1] >= 0 and (word, ids[j + 1]) in self.ordered:
                builder.add_contexts(TargetKey.ordered(word, ids[j + 1]), _labelled(ids, j - 1, j + 2))


def _window(ids: List[int], start: int, stop: int) -> List[int]:
    start = max(start, 0)
    return [word for word in ids[start:stop] if word >= 0]


def _labelled(ids: List[int], left_edge: int, right_edge: int) -> List[int]:
    """Near-far contexts: two N then two F words leftwards from ``left_edge`` and rightwards from ``right_edge``."""

    size = len(ids)
    contexts: List[int] = []
    for offset in range(4):
        label = 0 if offset < 2 else 1
        left = left_edge - offset
        if left >= 0 and ids[left] >= 0:
            contexts.append(2 * ids[left] + label)
        right = right_edge + offset
        if right < size and ids[right] >= 0:
            contexts.append(2 * ids[right] + label)
    return contexts


def count_contexts(
    corpus: Sequence[Sentence],
    vocab: Vocabulary,
    targets: TargetSet,
    config: ContextConfig,
    *,
    shards: int = 1,
    workers: int = 1,
) -> CoocTable:
    """Count windowed contexts for every target and derive the partition targets."""

    if shards < 1 or workers < 1:
        raise ParameterError("shards and workers must be >= 1.")
    corpus = list(corpus)
    counter = _ShardCounter(vocab, targets, config)
    bounds = _shard_bounds(len(corpus), shards)
    chunks = [corpus[start:stop] for start, stop in bounds]

    if workers == 1 or len(chunks) == 1:
        partials = [counter.count(chunk) for chunk in chunks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as executor:
            partials = list(executor.map(counter.count, chunks))

    builder = CoocBuilder()
    for index, partial in enumerate(partials, start=1):
        builder.update(partial)
        logger.info("merged shard %d/%d", index, len(partials))

    _derive_partition_targets(builder, targets, config)
    context_size = vocab.size * (2 if config.nearfar else 1)
    table = builder.build(vocab, context_size, config)
    logger.info("counted %d targets over %d sentences", len(table), len(corpus))
    return table


def count_shards(
    shards: Sequence[Sequence[Sentence]],
    vocab: Vocabulary,
    targets: TargetSet,
    config: ContextConfig,
) -> CoocTable:
    """Count each shard into its own table and merge them."""

    return merge_tables(*(count_contexts(shard, vocab, targets, config) for shard in shards))


def _derive_partition_targets(builder: CoocBuilder, targets: TargetSet, config: ContextConfig) -> None:
    # The exclusion target is the rest of the word's own window once the adjacent part is removed.
    if config.nearfar:
        for s, t in targets.ordered:
            phrase = TargetKey.ordered(s, t)
            phrase_row = builder.row_counter(phrase)
            phrase_occ = builder.occurrences(phrase)
            _set_difference(builder, TargetKey.nearfar_excl_left(s, t), TargetKey.nearfar_left(s), phrase_row, phrase_occ)
            _set_difference(builder, TargetKey.nearfar_excl_right(t, s), TargetKey.nearfar_right(t), phrase_row, phrase_occ)
        return

    for s, t in targets.unordered:
        for word, partner in ((t, s), (s, t)):
            adjacent = TargetKey.adjacent(word, partner)
            adjacent_row = builder.row_counter(adjacent)
            adjacent_occ = builder.occurrences(adjacent)
            builder.set_row(adjacent, adjacent_row, adjacent_occ)
            _set_difference(builder, TargetKey.exclusion(word, partner), TargetKey.unigram(word), adjacent_row, adjacent_occ)


def _set_difference(builder: CoocBuilder, key: TargetKey, whole: TargetKey, part, part_occ: int) -> None:
    whole_row = builder.row_counter(whole)
    row = {i: c - part.get(i, 0) for i, c in whole_row.items()}
    if any(value < 0 for value in row.values()):
        raise ParameterError(f"Partition of {whole.to_text()} produced negative counts.")
    builder.set_row(key, row, builder.occurrences(whole) - part_occ)


def _shard_bounds(length: int, shards: int) -> List[Tuple[int, int]]:
    shards = max(1, min(shards, length)) if length else 1
    base, extra = divmod(length, shards)
    bounds: List[Tuple[int, int]] = []
    start = 0
    for index in range(shards):
        stop = start + base + (1 if index < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds
