from __future__ import annotations

from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..corpus.targets import TargetKey
from ..errors import CorpusDecodeError, InputFileError
from ..utils import atomic_write_text, format_float, report_header
from .space import DEFAULT_BATCH, VectorSpace


def render_vectors(
    space: VectorSpace,
    keys: Optional[Sequence[TargetKey]] = None,
    *,
    config_hash: Optional[str] = None,
    seed: Optional[int] = None,
) -> str:
    keys = list(keys) if keys is not None else space.keys()
    lines = [report_header(config_hash, seed)]
    for chunk, block in space.iter_vectors(keys, DEFAULT_BATCH):
        for key, vector in zip(chunk, block):
            lines.append(key.to_text() + "\t" + " ".join(format_float(v) for v in vector) + "\n")
    return "".join(lines)


def write_vectors(
    space: VectorSpace,
    path: Path,
    keys: Optional[Sequence[TargetKey]] = None,
    *,
    config_hash: Optional[str] = None,
    seed: Optional[int] = None,
) -> Path:
    return atomic_write_text(Path(path), render_vectors(space, keys, config_hash=config_hash, seed=seed))


def read_vectors(path: Path) -> Tuple[List[TargetKey], np.ndarray]:
    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Vector file not found: {path}")
    keys: List[TargetKey] = []
    rows: List[List[float]] = []
    with path.open("r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            try:
                key_text, values = line.rstrip("\n").split("\t", 1)
                rows.append([float(v) for v in values.split()])
            except ValueError:
                raise CorpusDecodeError(f"{path}:{number}: malformed vector line") from None
            keys.append(TargetKey.from_text(key_text))
    if rows and len({len(row) for row in rows}) != 1:
        raise CorpusDecodeError(f"{path}: vectors have inconsistent dimensions")
    return keys, np.asarray(rows, dtype=np.float64)
