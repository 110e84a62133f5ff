from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from addcomp.corpus import (
    ContextConfig,
    TargetKey,
    TargetKind,
    TargetSet,
    build_vocabulary,
    count_contexts,
    count_shards,
    extract_targets,
    merge_tables,
    partition_counts,
    read_corpus,
    read_table,
    render_table,
    render_table_vocab,
    vocab_path_for,
)
from addcomp.errors import CorpusDecodeError, InputFileError, ParameterError, TargetLookupError

SENTENCES = [["a", "b", "c"], ["a", "b"]]


def _small_table(**context):
    vocab = build_vocabulary(SENTENCES)
    targets = extract_targets(SENTENCES, vocab)
    config = ContextConfig(word_window=1, phrase_window=1, **context)
    return count_contexts(SENTENCES, vocab, targets, config)


def test_vocabulary_ranks_by_count_then_token() -> None:
    vocab = build_vocabulary([["b", "a", "c"], ["b", "a"]])
    assert vocab.tokens == ("a", "b", "c")
    assert vocab.counts == (2, 2, 1)
    assert vocab.id_of("c") == 2


def test_read_corpus_rejects_invalid_utf8(tmp_path: Path) -> None:
    path = tmp_path / "corpus.txt"
    path.write_bytes(b"a b\n\xff\xfe c\n")
    with pytest.raises(CorpusDecodeError):
        read_corpus(path)


def test_read_corpus_missing_file(tmp_path: Path) -> None:
    with pytest.raises(InputFileError):
        read_corpus(tmp_path / "missing.txt")


def test_extract_targets_applies_min_count() -> None:
    vocab = build_vocabulary(SENTENCES)
    targets = extract_targets(SENTENCES, vocab, min_count=2)
    assert targets.unigrams == (0, 1)
    assert targets.ordered == ((0, 1),)
    assert targets.unordered == ((0, 1),)


def test_count_contexts_word_and_phrase_windows() -> None:
    table = _small_table()
    assert table.counts(TargetKey.unigram(0)) == {1: 2}
    assert table.counts(TargetKey.unigram(1)) == {0: 2, 2: 1}
    assert table.occurrences(TargetKey.unigram(1)) == 2
    assert table.counts(TargetKey.unordered(0, 1)) == {2: 1}
    assert table.occurrences(TargetKey.unordered(0, 1)) == 2


def test_exclusion_and_adjacent_partition_the_word_counts() -> None:
    table = _small_table()
    for key in table.keys(TargetKind.EXCLUSION):
        word, partner = key.words
        whole = table.dense_counts(TargetKey.unigram(word))
        parts = table.dense_counts(key) + table.dense_counts(TargetKey.adjacent(word, partner))
        np.testing.assert_array_equal(parts, whole)
        assert table.occurrences(key) + table.occurrences(TargetKey.adjacent(word, partner)) == table.occurrences(
            TargetKey.unigram(word)
        )


def test_partition_counts_of_a_pair() -> None:
    table = _small_table()
    partition = partition_counts(table, "c", "b")
    assert partition.exclusion == {0: 1}
    assert partition.adjacent == {0: 1, 2: 1}
    assert partition.pi == pytest.approx(0.5)


def test_partition_of_an_uncounted_pair_is_a_lookup_error() -> None:
    table = _small_table()
    with pytest.raises(TargetLookupError, match="was not counted"):
        partition_counts(table, "a", "c")
    vocab = build_vocabulary(SENTENCES)
    targets = extract_targets(SENTENCES, vocab, min_count=2)
    sparse_table = count_contexts(SENTENCES, vocab, targets, ContextConfig(word_window=1, phrase_window=1))
    with pytest.raises(TargetLookupError):
        partition_counts(sparse_table, "b", "c")


def test_partition_of_a_never_adjacent_target_pair_is_all_exclusion() -> None:
    vocab = build_vocabulary(SENTENCES)
    targets = TargetSet(unigrams=(0, 1, 2), ordered=(), unordered=((0, 2),))
    table = count_contexts(SENTENCES, vocab, targets, ContextConfig(word_window=1, phrase_window=1))
    partition = partition_counts(table, "a", "c")
    assert partition.adjacent == {}
    assert partition.exclusion == {1: 1}
    assert partition.pi == pytest.approx(1.0)


def test_nearfar_table_doubles_the_context_dimensions() -> None:
    table = _small_table(nearfar=True)
    assert table.nearfar
    assert table.context_size == 6
    assert TargetKey.ordered(0, 1) in table
    assert TargetKey.nearfar_left(0) in table
    assert TargetKey.nearfar_excl_left(0, 1) in table
    assert not table.keys(TargetKind.UNIGRAM)


def test_sharded_counts_equal_a_single_pass() -> None:
    sentences = [["a", "b", "c", "a", "b"], ["c", "a", "b"], ["b", "c"], ["a", "c", "b", "a"]]
    vocab = build_vocabulary(sentences)
    targets = extract_targets(sentences, vocab)
    config = ContextConfig(word_window=2, phrase_window=1)
    single = count_contexts(sentences, vocab, targets, config)
    pooled = count_contexts(sentences, vocab, targets, config, shards=3, workers=2)
    merged = count_shards([sentences[:2], sentences[2:]], vocab, targets, config)
    assert single.equals(pooled)
    assert single.equals(merged)


def test_merge_tables_ignores_order() -> None:
    sentences = [["a", "b", "c"], ["c", "a"], ["b", "a", "c"]]
    vocab = build_vocabulary(sentences)
    targets = extract_targets(sentences, vocab)
    config = ContextConfig(word_window=1, phrase_window=1)
    parts = [count_contexts([sentence], vocab, targets, config) for sentence in sentences]
    whole = count_contexts(sentences, vocab, targets, config)
    assert merge_tables(*parts).equals(whole)
    assert merge_tables(parts[2], parts[0], parts[1]).equals(whole)
    with pytest.raises(ParameterError):
        merge_tables()


def test_count_contexts_rejects_zero_workers() -> None:
    vocab = build_vocabulary(SENTENCES)
    targets = extract_targets(SENTENCES, vocab)
    with pytest.raises(ParameterError):
        count_contexts(SENTENCES, vocab, targets, ContextConfig(), workers=0)


def test_table_file_keeps_counts_and_vocabulary(tmp_path: Path) -> None:
    table = _small_table()
    path = tmp_path / "table.tsv"
    path.write_text(render_table(table), encoding="utf-8")
    vocab_path_for(path).write_text(render_table_vocab(table), encoding="utf-8")

    loaded = read_table(path)
    assert loaded.equals(table)
    assert loaded.vocab.tokens == ("a", "b", "c")


def test_read_table_detects_corrupt_totals(tmp_path: Path) -> None:
    path = tmp_path / "table.tsv"
    path.write_text("3\t0\t1\t1\nu:0\t5\t1:2\t2\n", encoding="utf-8")
    with pytest.raises(CorpusDecodeError):
        read_table(path)
