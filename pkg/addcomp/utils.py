from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np


def format_float(value: float) -> str:
    """Render a float with 9 significant digits, the precision of every report."""

    if value is None or (isinstance(value, float) and np.isnan(value)):
        return "nan"
    return f"{float(value):.9g}"


def canonical_json(payload: object) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def config_digest(payload: Mapping[str, object]) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def atomic_write_text(target: Path, text: str) -> Path:
    """Write text through a temporary sibling file and rename it into place."""

    target = Path(target)
    directory = target.parent if target.parent != Path("") else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except FileNotFoundError:
            pass
        raise
    return target


def report_header(config_hash: Optional[str], seed: Optional[int]) -> str:
    return f"# config_hash={config_hash or '-'} seed={seed if seed is not None else '-'}\n"


def render_tsv(
    header: Sequence[str],
    rows: Iterable[Sequence[object]],
    *,
    config_hash: Optional[str] = None,
    seed: Optional[int] = None,
) -> str:
    lines = [report_header(config_hash, seed), "\t".join(header) + "\n"]
    for row in rows:
        lines.append("\t".join(_cell(value) for value in row) + "\n")
    return "".join(lines)


def render_json(payload: Mapping[str, object], *, config_hash: Optional[str] = None, seed: Optional[int] = None) -> str:
    body = dict(payload)
    body["config_hash"] = config_hash
    body["seed"] = seed
    return json.dumps(_jsonable(body), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: object) -> str:
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, (np.integer,)):
        return str(int(value))
    return str(value)


def _jsonable(value: object) -> object:
    if isinstance(value, Mapping):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(item) for item in value.tolist()]
    if isinstance(value, (np.floating, float)):
        number = float(value)
        if not np.isfinite(number):
            return None
        return float(format_float(number))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, Path):
        return str(value)
    return value
