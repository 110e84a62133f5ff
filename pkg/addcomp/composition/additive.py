from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from ..corpus.table import CoocTable
from ..corpus.targets import TargetKey
from ..corpus.vocab import WordRef
from ..errors import DomainError, ParameterError
from ..vectors.space import VectorSpace

MODES = ("ordinary", "nearfar")


def resolve_mode(nearfar: bool, mode: Optional[str]) -> str:
    expected = "nearfar" if nearfar else "ordinary"
    if mode is None:
        return expected
    if mode not in MODES:
        raise ParameterError(f"mode must be one of {', '.join(MODES)}; got {mode!r}.")
    if mode != expected:
        raise ParameterError(f"A {expected} table cannot be composed in {mode} mode.")
    return mode


def constituent_keys(space: VectorSpace, s: WordRef, t: WordRef) -> Tuple[TargetKey, TargetKey]:
    s_id, t_id = space.vocab.id_of(s), space.vocab.id_of(t)
    if space.nearfar:
        return TargetKey.nearfar_left(s_id), TargetKey.nearfar_right(t_id)
    return TargetKey.unigram(s_id), TargetKey.unigram(t_id)


def phrase_key(space: VectorSpace, s: WordRef, t: WordRef) -> TargetKey:
    s_id, t_id = space.vocab.id_of(s), space.vocab.id_of(t)
    if space.nearfar:
        return TargetKey.ordered(s_id, t_id)
    return TargetKey.unordered(s_id, t_id)


def compose_additive(space: VectorSpace, s: WordRef, t: WordRef) -> np.ndarray:
    """½(w^s + w^t); in a Near-far space the constituents are s• and •t."""

    left, right = constituent_keys(space, s, t)
    return 0.5 * (space.natural_vector(left) + space.natural_vector(right))


def bias(space: VectorSpace, s: WordRef, t: WordRef, mode: Optional[str] = None) -> float:
    resolve_mode(space.nearfar, mode)
    target = space.natural_vector(phrase_key(space, s, t))
    return float(np.linalg.norm(target - compose_additive(space, s, t)))


def collocation_pi(cooc: CoocTable, s: WordRef, t: WordRef, mode: Optional[str] = None) -> Tuple[float, float]:
    """Count-ratio estimates of the collocation probabilities of the pair.

    Ordinary mode returns (1 - C({st})/C(t), 1 - C({st})/C(s)); Near-far mode
    returns (1 - C(st)/C(s), 1 - C(st)/C(t)).
    """

    mode = resolve_mode(cooc.nearfar, mode)
    s_id, t_id = cooc.vocab.id_of(s), cooc.vocab.id_of(t)
    s_count, t_count = cooc.word_count(s_id), cooc.word_count(t_id)
    if s_count == 0 or t_count == 0:
        raise DomainError(
            f"Collocation ratio undefined: C({cooc.vocab.token_of(s_id)})={s_count}, "
            f"C({cooc.vocab.token_of(t_id)})={t_count}."
        )
    if mode == "nearfar":
        key = TargetKey.ordered(s_id, t_id)
        together = cooc.occurrences(key) if key in cooc else 0
        first, second = s_count, t_count
    else:
        key = TargetKey.unordered(s_id, t_id)
        together = cooc.occurrences(key) if key in cooc else 0
        first, second = t_count, s_count
    return _clamp(1.0 - together / first), _clamp(1.0 - together / second)


def bias_bound(pi1: float, pi2: float) -> float:
    """√(½(π₁² + π₂² + π₁π₂))."""

    for value in (pi1, pi2):
        if not (0.0 <= value <= 1.0):
            raise DomainError(f"Collocation probabilities must lie in [0, 1]; got {value}.")
    return math.sqrt(0.5 * (pi1 * pi1 + pi2 * pi2 + pi1 * pi2))


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))
