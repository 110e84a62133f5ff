from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from addcomp.errors import CorpusDecodeError, EvaluationError, InputFileError, ParameterError
from addcomp.evaluation import (
    AnalogyDataset,
    PhraseSimDataset,
    PhraseSimRow,
    analogy_eval,
    analogy_solve,
    load_analogy_dataset,
    load_phrase_dataset,
    phrase_similarity,
    phrase_similarity_eval,
    planted_lexicon,
    word_labels,
    write_phrase_dataset,
)
from addcomp.reduce import EmbeddingSet

WORDS = ("red", "car", "blue", "boat", "old", "house")


def _embeddings() -> EmbeddingSet:
    rng = np.random.default_rng(8)
    return EmbeddingSet(labels=WORDS, vectors=rng.normal(size=(len(WORDS), 5)))


def _self_consistent_dataset(embeddings: EmbeddingSet, composer: str) -> PhraseSimDataset:
    pairs = [("red", "car"), ("blue", "boat"), ("old", "house"), ("red", "boat"), ("old", "car")]
    rows = []
    for first in pairs:
        for second in pairs:
            if first < second:
                row = PhraseSimRow("adjectivenouns", first, second, 1.0)
                similarity = phrase_similarity(embeddings, row, composer)
                rows.append(PhraseSimRow("adjectivenouns", first, second, 4.0 + 3.0 * similarity))
    return PhraseSimDataset(tuple(rows))


@pytest.mark.parametrize("composer", ["additive", "tensor"])
def test_scores_equal_to_model_similarity_give_rho_one(composer) -> None:
    embeddings = _embeddings()
    results = phrase_similarity_eval(embeddings, _self_consistent_dataset(embeddings, composer), composer)
    result = results["adjectivenouns"]
    assert result.rho == pytest.approx(1.0)
    assert result.n_used == 10
    assert result.n_dropped == 0


def test_out_of_vocabulary_rows_are_dropped() -> None:
    embeddings = _embeddings()
    rows = list(_self_consistent_dataset(embeddings, "additive").rows)
    rows.append(PhraseSimRow("adjectivenouns", ("red", "zebra"), ("old", "car"), 2.0))
    rows.append(PhraseSimRow("verbobjects", ("drive", "car"), ("sail", "boat"), 5.0))
    results = phrase_similarity_eval(embeddings, PhraseSimDataset(tuple(rows)))
    assert results["adjectivenouns"].n_dropped == 1
    assert results["verbobjects"].n_used == 0
    assert math.isnan(results["verbobjects"].rho)


def test_phrase_eval_needs_usable_rows() -> None:
    dataset = PhraseSimDataset((PhraseSimRow("x", ("a", "b"), ("c", "d"), 3.0),))
    with pytest.raises(EvaluationError):
        phrase_similarity_eval(_embeddings(), dataset)
    with pytest.raises(ParameterError):
        phrase_similarity_eval(_embeddings(), dataset, composer="max")


def test_nearfar_labels_mark_the_side() -> None:
    assert word_labels("red", "car", True) == ("red•", "•car")
    assert word_labels("red", "car", False) == ("red", "car")


def test_phrase_dataset_file(tmp_path: Path) -> None:
    embeddings = _embeddings()
    dataset = _self_consistent_dataset(embeddings, "additive")
    path = write_phrase_dataset(dataset, tmp_path / "phrases.tsv")
    loaded = load_phrase_dataset(path)
    assert len(loaded) == len(dataset)
    assert loaded.categories() == ["adjectivenouns"]


def test_phrase_dataset_rejects_scores_out_of_range(tmp_path: Path) -> None:
    path = tmp_path / "phrases.tsv"
    path.write_text("adjectivenouns\tred\tcar\tblue\tboat\t8\n", encoding="utf-8")
    with pytest.raises(CorpusDecodeError, match="outside"):
        load_phrase_dataset(path)
    with pytest.raises(InputFileError):
        load_phrase_dataset(tmp_path / "missing.tsv")


def test_planted_lexicon_is_solved_exactly() -> None:
    embeddings, dataset = planted_lexicon(5, 4)
    assert len(dataset) == 5 * 4 * 4 * 3
    result = analogy_eval(embeddings, dataset)
    assert result.accuracy == 1.0
    assert result.n_correct == result.n_used == len(dataset)
    assert analogy_solve(embeddings, "c0a0", "c0a1", "c2a0", exclude_inputs=False) == "c2a1"


def test_analogy_drops_unknown_words(tmp_path: Path) -> None:
    embeddings, _ = planted_lexicon(3, 3)
    path = tmp_path / "analogy.tsv"
    path.write_text("c0a0\tc0a1\tc1a0\tc1a1\nc0a0\tc0a1\tc9a0\tc9a1\n", encoding="utf-8")
    result = analogy_eval(embeddings, load_analogy_dataset(path))
    assert result.n_used == 1
    assert result.n_dropped == 1
    with pytest.raises(EvaluationError):
        analogy_eval(embeddings, AnalogyDataset((("x", "y", "z", "w"),)))


def test_shuffled_scores_give_no_correlation() -> None:
    rng = np.random.default_rng(1944)
    labels = tuple(f"w{i}" for i in range(60))
    embeddings = EmbeddingSet(labels=labels, vectors=rng.normal(size=(len(labels), 20)))
    rows = []
    for _ in range(1944):
        a, b, c, d = rng.choice(len(labels), size=4, replace=False)
        row = PhraseSimRow("adjectivenouns", (labels[a], labels[b]), (labels[c], labels[d]), 1.0)
        rows.append(row)
    scores = np.array([phrase_similarity(embeddings, row, "additive") for row in rows])
    shuffled = rng.permutation(scores)
    dataset = PhraseSimDataset(
        tuple(PhraseSimRow(row.category, row.phrase1, row.phrase2, float(s)) for row, s in zip(rows, shuffled))
    )
    result = phrase_similarity_eval(embeddings, dataset)["adjectivenouns"]
    assert result.n_used == 1944
    assert abs(result.rho) < 0.1
