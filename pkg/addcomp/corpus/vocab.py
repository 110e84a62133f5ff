from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from ..errors import CorpusDecodeError, InputFileError, TargetLookupError

logger = logging.getLogger(__name__)

Sentence = Sequence[str]
WordRef = Union[int, str]


@dataclass(frozen=True)
class Vocabulary:
    """Rank-ordered lexicon; index i is the rank of the word."""

    tokens: Tuple[str, ...]
    counts: Tuple[int, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.tokens) != len(self.counts):
            raise ValueError("tokens and counts must have equal length.")
        object.__setattr__(self, "_index", {token: i for i, token in enumerate(self.tokens)})
        if len(self._index) != len(self.tokens):
            raise ValueError("Vocabulary tokens must be unique.")

    @property
    def size(self) -> int:
        return len(self.tokens)

    @property
    def total(self) -> int:
        return int(sum(self.counts))

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def id_of(self, word: WordRef) -> int:
        if isinstance(word, (int, np.integer)):
            if not 0 <= int(word) < self.size:
                raise TargetLookupError(f"Unknown word id: {word}")
            return int(word)
        try:
            return self._index[word]
        except KeyError:
            raise TargetLookupError(f"Unknown word: {word}") from None

    def token_of(self, word_id: int) -> str:
        if not 0 <= word_id < self.size:
            raise TargetLookupError(f"Unknown word id: {word_id}")
        return self.tokens[word_id]

    def get(self, token: str, default: int = -1) -> int:
        return self._index.get(token, default)

    def probabilities(self) -> np.ndarray:
        counts = np.asarray(self.counts, dtype=np.float64)
        total = counts.sum()
        if total == 0:
            return counts
        return counts / total

    @classmethod
    def placeholder(cls, counts: Sequence[int]) -> "Vocabulary":
        """Vocabulary of synthetic words ``w0, w1, ...`` with the given counts."""

        return cls(tuple(f"w{i}" for i in range(len(counts))), tuple(int(c) for c in counts))


def build_vocabulary(sentences: Iterable[Sentence], min_count: int = 1) -> Vocabulary:
    if min_count < 1:
        raise ValueError("min_count must be >= 1.")
    counter: Counter = Counter()
    for sentence in sentences:
        counter.update(token for token in sentence if token)
    kept = [(token, count) for token, count in counter.items() if count >= min_count]
    # Rank by count, then lexicographically.
    kept.sort(key=lambda item: (-item[1], item[0]))
    logger.info("vocabulary: %d of %d types kept at min_count=%d", len(kept), len(counter), min_count)
    return Vocabulary(tuple(token for token, _ in kept), tuple(count for _, count in kept))


def read_corpus(path: Path) -> List[List[str]]:
    """Read a pre-tokenized corpus: UTF-8, one sentence per line, space-separated tokens."""

    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Corpus file not found: {path}")
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusDecodeError(f"Corpus {path} is not valid UTF-8: {exc}") from exc
    sentences = [line.split() for line in text.splitlines()]
    return [sentence for sentence in sentences if sentence]


def render_vocabulary(vocab: Vocabulary) -> str:
    lines = [f"{token}\t{count}\n" for token, count in zip(vocab.tokens, vocab.counts)]
    return "".join(lines)


def read_vocabulary(path: Path) -> Vocabulary:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Vocabulary file not found: {path}")
    tokens: List[str] = []
    counts: List[int] = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise CorpusDecodeError(f"{path}:{line_no}: expected 'token<TAB>count'.")
        tokens.append(parts[0])
        counts.append(int(parts[1]))
    return Vocabulary(tuple(tokens), tuple(counts))
