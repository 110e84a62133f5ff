"""Seeded random streams.

Every stream is a PCG64 generator whose ``SeedSequence`` is keyed by the
top-level seed plus hashed stream names, so ``make_rng(7, "synth", "target", 3)``
is the same on every platform and independent of the order streams are opened.
"""

from __future__ import annotations

import hashlib
from typing import Union

import numpy as np

StreamName = Union[str, int]

_BLOCK = 1 << 16


def stream_key(name: StreamName) -> int:
    if isinstance(name, (int, np.integer)):
        return int(name) & 0xFFFFFFFF
    digest = hashlib.sha256(str(name).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


def make_rng(seed: int, *names: StreamName) -> np.random.Generator:
    sequence = np.random.SeedSequence(int(seed), spawn_key=tuple(stream_key(name) for name in names))
    return np.random.Generator(np.random.PCG64(sequence))


class UniformStream:
    """Buffered uniform draws in [0, 1); avoids one generator call per decision."""

    def __init__(self, rng: np.random.Generator, block: int = _BLOCK) -> None:
        self._rng = rng
        self._block = block
        self._buffer = rng.random(block)
        self._position = 0

    def next(self) -> float:
        if self._position >= self._block:
            self._buffer = self._rng.random(self._block)
            self._position = 0
        value = self._buffer[self._position]
        self._position += 1
        return float(value)
