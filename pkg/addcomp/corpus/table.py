from __future__ import annotations

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from ..errors import CorpusDecodeError, InputFileError, ParameterError, TargetLookupError
from .targets import ContextConfig, TargetKey, TargetKind
from .vocab import Vocabulary, read_vocabulary, render_vocabulary

logger = logging.getLogger(__name__)

Row = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class CoocTable:
    """Sparse context counts C_i^Υ per target, immutable after construction.

    Each row stores ascending context ids with positive counts. ``occurrences``
    holds the number of target tokens, which is what collocation
    probabilities are estimated from; ``total`` is the context total C(Υ).
    """

    vocab: Vocabulary
    context_size: int
    config: ContextConfig
    rows: Mapping[TargetKey, Row]
    occurrence_counts: Mapping[TargetKey, int]
    _totals: Dict[TargetKey, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        totals = {key: int(counts.sum()) for key, (_, counts) in self.rows.items()}
        object.__setattr__(self, "_totals", totals)

    @property
    def nearfar(self) -> bool:
        return self.config.nearfar

    def __contains__(self, key: object) -> bool:
        return key in self.rows

    def __len__(self) -> int:
        return len(self.rows)

    def keys(self, kind: Optional[TargetKind] = None) -> List[TargetKey]:
        keys = self.rows.keys() if kind is None else (key for key in self.rows if key.kind is kind)
        return sorted(keys)

    def row(self, key: TargetKey) -> Row:
        try:
            return self.rows[key]
        except KeyError:
            raise TargetLookupError(f"Target not in table: {key.to_text()}") from None

    def counts(self, key: TargetKey) -> Dict[int, int]:
        ids, counts = self.row(key)
        return {int(i): int(c) for i, c in zip(ids, counts)}

    def dense_counts(self, key: TargetKey) -> np.ndarray:
        ids, counts = self.row(key)
        out = np.zeros(self.context_size, dtype=np.int64)
        out[ids] = counts
        return out

    def total(self, key: TargetKey) -> int:
        self.row(key)
        return self._totals[key]

    def occurrences(self, key: TargetKey) -> int:
        self.row(key)
        return int(self.occurrence_counts.get(key, 0))

    def probabilities(self, key: TargetKey) -> np.ndarray:
        dense = self.dense_counts(key).astype(np.float64)
        total = dense.sum()
        if total == 0:
            return dense
        return dense / total

    def word_count(self, word: int) -> int:
        """Occurrence count of a word, from its unigram target when counted, else the vocabulary."""

        for key in (TargetKey.unigram(word), TargetKey.nearfar_left(word)):
            if key in self.rows:
                return int(self.occurrence_counts.get(key, 0))
        return int(self.vocab.counts[word])

    def to_csr(self, keys: Sequence[TargetKey]) -> sparse.csr_matrix:
        indptr = [0]
        indices: List[np.ndarray] = []
        data: List[np.ndarray] = []
        for key in keys:
            ids, counts = self.row(key)
            indices.append(ids)
            data.append(counts)
            indptr.append(indptr[-1] + len(ids))
        matrix = sparse.csr_matrix(
            (
                np.concatenate(data) if data else np.zeros(0, dtype=np.int64),
                np.concatenate(indices) if indices else np.zeros(0, dtype=np.int64),
                np.asarray(indptr, dtype=np.int64),
            ),
            shape=(len(keys), self.context_size),
        )
        return matrix

    def column_marginals(self) -> np.ndarray:
        totals = np.zeros(self.context_size, dtype=np.float64)
        for ids, counts in self.rows.values():
            np.add.at(totals, ids, counts)
        return totals

    def equals(self, other: "CoocTable") -> bool:
        if self.context_size != other.context_size or self.config != other.config:
            return False
        if set(self.rows) != set(other.rows):
            return False
        for key, (ids, counts) in self.rows.items():
            other_ids, other_counts = other.rows[key]
            if not (np.array_equal(ids, other_ids) and np.array_equal(counts, other_counts)):
                return False
            if self.occurrence_counts.get(key, 0) != other.occurrence_counts.get(key, 0):
                return False
        return True

    def merge(self, other: "CoocTable") -> "CoocTable":
        if self.context_size != other.context_size or self.config != other.config:
            raise ParameterError("Only tables counted with the same configuration can be merged.")
        builder = CoocBuilder()
        for table in (self, other):
            for key, (ids, counts) in table.rows.items():
                builder.add_row(key, ids, counts)
                builder.add_occurrences(key, table.occurrence_counts.get(key, 0))
        return builder.build(self.vocab, self.context_size, self.config)


class CoocBuilder:
    """Mutable accumulator used while counting; ``build`` freezes it into a CoocTable."""

    def __init__(self) -> None:
        self._rows: Dict[TargetKey, Counter] = defaultdict(Counter)
        self._occurrences: Counter = Counter()

    def add_contexts(self, key: TargetKey, contexts: Iterable[int]) -> None:
        self._rows[key].update(contexts)
        self._occurrences[key] += 1

    def add_row(self, key: TargetKey, ids: Iterable[int], counts: Iterable[int]) -> None:
        row = self._rows[key]
        for i, c in zip(ids, counts):
            row[int(i)] += int(c)

    def add_occurrences(self, key: TargetKey, count: int) -> None:
        self._occurrences[key] += int(count)
        self._rows[key]

    def update(self, other: "CoocBuilder") -> None:
        for key, row in other._rows.items():
            self._rows[key].update(row)
        self._occurrences.update(other._occurrences)

    def row_counter(self, key: TargetKey) -> Counter:
        return self._rows.get(key, Counter())

    def occurrences(self, key: TargetKey) -> int:
        return self._occurrences.get(key, 0)

    def set_row(self, key: TargetKey, row: Mapping[int, int], occurrences: int) -> None:
        self._rows[key] = Counter({i: c for i, c in row.items() if c})
        self._occurrences[key] = occurrences

    def build(self, vocab: Vocabulary, context_size: int, config: ContextConfig) -> CoocTable:
        rows: Dict[TargetKey, Row] = {}
        for key in sorted(self._rows):
            row = self._rows[key]
            ids = np.asarray(sorted(i for i, c in row.items() if c), dtype=np.int64)
            counts = np.asarray([row[i] for i in ids], dtype=np.int64)
            rows[key] = (ids, counts)
        occurrences = {key: int(self._occurrences.get(key, 0)) for key in rows}
        return CoocTable(vocab, context_size, config, rows, occurrences)


def merge_tables(*tables: CoocTable) -> CoocTable:
    """Sum tables counted over disjoint corpus parts; the result does not depend on their order."""

    if not tables:
        raise ParameterError("merge_tables needs at least one table.")
    merged = tables[0]
    for table in tables[1:]:
        merged = merged.merge(table)
    return merged


def table_from_arrays(
    vocab: Vocabulary,
    config: ContextConfig,
    rows: Mapping[TargetKey, np.ndarray],
    occurrences: Optional[Mapping[TargetKey, int]] = None,
) -> CoocTable:
    """Build a table from dense count vectors (one per target)."""

    context_size = vocab.size * (2 if config.nearfar else 1)
    sparse_rows: Dict[TargetKey, Row] = {}
    for key in sorted(rows):
        dense = np.asarray(rows[key], dtype=np.int64)
        if dense.shape != (context_size,):
            raise ParameterError(f"Row for {key.to_text()} must have {context_size} entries.")
        ids = np.flatnonzero(dense)
        sparse_rows[key] = (ids.astype(np.int64), dense[ids])
    occ = {key: int(occurrences[key]) if occurrences and key in occurrences else int(sparse_rows[key][1].sum()) for key in sparse_rows}
    return CoocTable(vocab, context_size, config, sparse_rows, occ)


def render_table(table: CoocTable) -> str:
    config = table.config
    lines = [f"{table.vocab.size}\t{int(config.nearfar)}\t{config.word_window}\t{config.phrase_window}\n"]
    for key in table.keys():
        ids, counts = table.rows[key]
        pairs = ",".join(f"{int(i)}:{int(c)}" for i, c in zip(ids, counts))
        lines.append(f"{key.to_text()}\t{table.total(key)}\t{pairs}\t{table.occurrences(key)}\n")
    return "".join(lines)


def vocab_path_for(table_path: Path) -> Path:
    table_path = Path(table_path)
    return table_path.with_name(table_path.name + ".vocab.tsv")


def render_table_vocab(table: CoocTable) -> str:
    return render_vocabulary(table.vocab)


def read_table(path: Path, vocab: Optional[Vocabulary] = None) -> CoocTable:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Table file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise CorpusDecodeError(f"Table {path} is empty.")
    try:
        n, nearfar, word_window, phrase_window = (int(part) for part in lines[0].split("\t"))
    except ValueError:
        raise CorpusDecodeError(f"{path}: malformed header line.") from None
    config = ContextConfig(word_window=word_window, phrase_window=phrase_window, nearfar=bool(nearfar))

    if vocab is None:
        sibling = vocab_path_for(path)
        vocab = read_vocabulary(sibling) if sibling.is_file() else Vocabulary.placeholder([0] * n)
    if vocab.size != n:
        raise CorpusDecodeError(f"{path}: header declares {n} words but the vocabulary has {vocab.size}.")

    rows: Dict[TargetKey, Row] = {}
    occurrences: Dict[TargetKey, int] = {}
    for line_no, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4):
            raise CorpusDecodeError(f"{path}:{line_no}: expected 3 or 4 tab-separated fields.")
        key = TargetKey.from_text(parts[0])
        pairs = [item.split(":") for item in parts[2].split(",")] if parts[2] else []
        ids = np.asarray([int(i) for i, _ in pairs], dtype=np.int64)
        counts = np.asarray([int(c) for _, c in pairs], dtype=np.int64)
        if counts.sum() != int(parts[1]):
            raise CorpusDecodeError(f"{path}:{line_no}: context total does not match the counts.")
        rows[key] = (ids, counts)
        occurrences[key] = int(parts[3]) if len(parts) == 4 else int(parts[1])
    context_size = n * (2 if config.nearfar else 1)
    logger.info("read %d targets from %s", len(rows), path)
    return CoocTable(vocab, context_size, config, rows, occurrences)
