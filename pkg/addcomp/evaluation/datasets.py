from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Tuple

from ..errors import CorpusDecodeError, InputFileError
from ..utils import atomic_write_text, format_float

SCORE_RANGE = (1.0, 7.0)


@dataclass(frozen=True)
class PhraseSimRow:
    category: str
    phrase1: Tuple[str, str]
    phrase2: Tuple[str, str]
    score: float

    @property
    def words(self) -> Tuple[str, str, str, str]:
        return self.phrase1 + self.phrase2


@dataclass(frozen=True)
class PhraseSimDataset:
    rows: Tuple[PhraseSimRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def categories(self) -> List[str]:
        return sorted({row.category for row in self.rows})


@dataclass(frozen=True)
class AnalogyDataset:
    rows: Tuple[Tuple[str, str, str, str], ...]

    def __len__(self) -> int:
        return len(self.rows)


def _lines(path: Path):
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Dataset not found: {path}")
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusDecodeError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    for number, line in enumerate(text.splitlines(), start=1):
        if line.strip() and not line.startswith("#"):
            yield number, line.split("\t")


def load_phrase_dataset(path: Path) -> PhraseSimDataset:
    """Rows of ``category<TAB>w1<TAB>w2<TAB>w3<TAB>w4<TAB>score``."""

    rows: List[PhraseSimRow] = []
    low, high = SCORE_RANGE
    for number, fields in _lines(path):
        if len(fields) != 6:
            raise CorpusDecodeError(f"{path}:{number}: expected 6 tab-separated fields, got {len(fields)}")
        category, w1, w2, w3, w4, raw = fields
        if not category:
            raise CorpusDecodeError(f"{path}:{number}: empty category")
        try:
            score = float(raw)
        except ValueError:
            raise CorpusDecodeError(f"{path}:{number}: score {raw!r} is not a number") from None
        if not low <= score <= high:
            raise CorpusDecodeError(f"{path}:{number}: score {score} outside [{low:g}, {high:g}]")
        rows.append(PhraseSimRow(category, (w1, w2), (w3, w4), score))
    return PhraseSimDataset(tuple(rows))


def load_analogy_dataset(path: Path) -> AnalogyDataset:
    """Rows of ``a<TAB>b<TAB>c<TAB>d``."""

    rows = []
    for number, fields in _lines(path):
        if len(fields) != 4 or not all(fields):
            raise CorpusDecodeError(f"{path}:{number}: expected 4 tab-separated words")
        rows.append(tuple(fields))
    return AnalogyDataset(tuple(rows))


def write_phrase_dataset(dataset: PhraseSimDataset, path: Path) -> Path:
    lines = [
        "\t".join((row.category, *row.words, format_float(row.score))) + "\n" for row in dataset.rows
    ]
    return atomic_write_text(Path(path), "".join(lines))


def write_analogy_dataset(dataset: AnalogyDataset, path: Path) -> Path:
    return atomic_write_text(Path(path), "".join("\t".join(row) + "\n" for row in dataset.rows))
