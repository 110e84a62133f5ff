"""Phrase similarity and word analogy harnesses."""

from .analogy import AnalogyResult, analogy_eval, analogy_solve, planted_lexicon
from .datasets import (
    AnalogyDataset,
    PhraseSimDataset,
    PhraseSimRow,
    load_analogy_dataset,
    load_phrase_dataset,
    write_analogy_dataset,
    write_phrase_dataset,
)
from .phrase import COMPOSERS, CategoryResult, phrase_similarity, phrase_similarity_eval, word_labels

__all__ = [
    "AnalogyDataset",
    "AnalogyResult",
    "COMPOSERS",
    "CategoryResult",
    "PhraseSimDataset",
    "PhraseSimRow",
    "analogy_eval",
    "analogy_solve",
    "load_analogy_dataset",
    "load_phrase_dataset",
    "phrase_similarity",
    "phrase_similarity_eval",
    "planted_lexicon",
    "word_labels",
    "write_analogy_dataset",
    "write_phrase_dataset",
]
