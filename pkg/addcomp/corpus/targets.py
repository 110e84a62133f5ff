from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..errors import ParameterError, TargetLookupError
from .vocab import Sentence, Vocabulary


class TargetKind(str, Enum):
    UNIGRAM = "u"
    ORDERED = "ob"
    UNORDERED = "ub"
    EXCLUSION = "ex"
    ADJACENT = "adj"
    NEARFAR_LEFT = "nl"
    NEARFAR_RIGHT = "nr"
    NEARFAR_EXCL_LEFT = "nxl"
    NEARFAR_EXCL_RIGHT = "nxr"


_ARITY = {
    TargetKind.UNIGRAM: 1,
    TargetKind.NEARFAR_LEFT: 1,
    TargetKind.NEARFAR_RIGHT: 1,
}


@dataclass(frozen=True, order=True)
class TargetKey:
    """A counted target. Two-word kinds list the token word first, then the partner."""

    kind: TargetKind
    words: Tuple[int, ...]

    def __post_init__(self) -> None:
        expected = _ARITY.get(self.kind, 2)
        if len(self.words) != expected:
            raise ParameterError(f"Target kind '{self.kind.value}' needs {expected} word id(s).")
        if self.kind is TargetKind.UNORDERED and self.words[0] > self.words[1]:
            raise ParameterError("Unordered bigram keys must be canonical; use TargetKey.unordered().")

    @classmethod
    def unigram(cls, t: int) -> "TargetKey":
        return cls(TargetKind.UNIGRAM, (int(t),))

    @classmethod
    def ordered(cls, s: int, t: int) -> "TargetKey":
        return cls(TargetKind.ORDERED, (int(s), int(t)))

    @classmethod
    def unordered(cls, s: int, t: int) -> "TargetKey":
        low, high = sorted((int(s), int(t)))
        return cls(TargetKind.UNORDERED, (low, high))

    @classmethod
    def exclusion(cls, t: int, s: int) -> "TargetKey":
        """Tokens of ``t`` not next to ``s``."""

        return cls(TargetKind.EXCLUSION, (int(t), int(s)))

    @classmethod
    def adjacent(cls, t: int, s: int) -> "TargetKey":
        """Tokens of ``t`` with ``s`` immediately left or right."""

        return cls(TargetKind.ADJACENT, (int(t), int(s)))

    @classmethod
    def nearfar_left(cls, s: int) -> "TargetKey":
        return cls(TargetKind.NEARFAR_LEFT, (int(s),))

    @classmethod
    def nearfar_right(cls, t: int) -> "TargetKey":
        return cls(TargetKind.NEARFAR_RIGHT, (int(t),))

    @classmethod
    def nearfar_excl_left(cls, s: int, t: int) -> "TargetKey":
        """Left-role tokens of ``s`` not at the left of ``t``."""

        return cls(TargetKind.NEARFAR_EXCL_LEFT, (int(s), int(t)))

    @classmethod
    def nearfar_excl_right(cls, t: int, s: int) -> "TargetKey":
        """Right-role tokens of ``t`` not at the right of ``s``."""

        return cls(TargetKind.NEARFAR_EXCL_RIGHT, (int(t), int(s)))

    def to_text(self) -> str:
        return f"{self.kind.value}:{','.join(str(word) for word in self.words)}"

    @classmethod
    def from_text(cls, text: str) -> "TargetKey":
        prefix, sep, rest = text.partition(":")
        if not sep or not rest:
            raise TargetLookupError(f"Malformed target key: {text!r}")
        try:
            kind = TargetKind(prefix)
            words = tuple(int(part) for part in rest.split(","))
        except ValueError:
            raise TargetLookupError(f"Malformed target key: {text!r}") from None
        return cls(kind, words)

    def render(self, vocab: Optional[Vocabulary] = None) -> str:
        names = [vocab.token_of(word) if vocab is not None else str(word) for word in self.words]
        kind = self.kind
        if kind is TargetKind.UNIGRAM:
            return names[0]
        if kind is TargetKind.ORDERED:
            return f"{names[0]}_{names[1]}"
        if kind is TargetKind.UNORDERED:
            return "{" + f"{names[0]}_{names[1]}" + "}"
        if kind is TargetKind.EXCLUSION:
            return f"{names[1]}/{names[0]}\\{names[1]}"
        if kind is TargetKind.ADJACENT:
            return f"{names[0]}+{names[1]}"
        if kind is TargetKind.NEARFAR_LEFT:
            return f"{names[0]}•"
        if kind is TargetKind.NEARFAR_RIGHT:
            return f"•{names[0]}"
        if kind is TargetKind.NEARFAR_EXCL_LEFT:
            return f"{names[0]}•\\{names[1]}"
        return f"{names[1]}/•{names[0]}"

    @property
    def is_phrase(self) -> bool:
        return self.kind in (TargetKind.ORDERED, TargetKind.UNORDERED)


@dataclass(frozen=True)
class ContextConfig:
    word_window: int = 5
    phrase_window: int = 4
    nearfar: bool = False
    sentence_bounded: bool = True
    skip_tokens: FrozenSet[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.word_window < 1 or self.phrase_window < 1:
            raise ParameterError("Context windows must be >= 1.")
        if not self.sentence_bounded:
            raise ParameterError("Only sentence-bounded windows are supported.")
        object.__setattr__(self, "skip_tokens", frozenset(self.skip_tokens))

    @property
    def near_span(self) -> int:
        return 2

    @property
    def far_span(self) -> int:
        return 2


@dataclass(frozen=True)
class TargetSet:
    """Targets selected from one corpus, with their occurrence counts."""

    unigrams: Tuple[int, ...]
    ordered: Tuple[Tuple[int, int], ...]
    unordered: Tuple[Tuple[int, int], ...]
    ordered_counts: Dict[Tuple[int, int], int] = field(default_factory=dict, compare=False)
    unordered_counts: Dict[Tuple[int, int], int] = field(default_factory=dict, compare=False)

    def keys(self, nearfar: bool = False) -> List[TargetKey]:
        keys: List[TargetKey] = []
        if nearfar:
            for word in self.unigrams:
                keys.append(TargetKey.nearfar_left(word))
                keys.append(TargetKey.nearfar_right(word))
            keys.extend(TargetKey.ordered(s, t) for s, t in self.ordered)
            return keys
        keys.extend(TargetKey.unigram(word) for word in self.unigrams)
        keys.extend(TargetKey.ordered(s, t) for s, t in self.ordered)
        keys.extend(TargetKey.unordered(s, t) for s, t in self.unordered)
        return keys


def encode_sentence(sentence: Sentence, vocab: Vocabulary, skip_tokens: FrozenSet[str] = frozenset()) -> List[int]:
    """Map tokens to ids; OOV tokens become -1 and keep their slot, skipped tokens are dropped."""

    return [vocab.get(token) for token in sentence if token not in skip_tokens]


def extract_targets(
    corpus: Iterable[Sentence],
    vocab: Vocabulary,
    min_count: int = 1,
    *,
    skip_tokens: FrozenSet[str] = frozenset(),
) -> TargetSet:
    if min_count < 1:
        raise ParameterError("min_count must be >= 1.")
    pair_counts: Counter = Counter()
    for sentence in corpus:
        ids = encode_sentence(sentence, vocab, skip_tokens)
        for left, right in zip(ids, ids[1:]):
            if left >= 0 and right >= 0:
                pair_counts[(left, right)] += 1

    unordered_counts: Counter = Counter()
    for (s, t), count in pair_counts.items():
        unordered_counts[tuple(sorted((s, t)))] += count

    unigrams = tuple(i for i, count in enumerate(vocab.counts) if count >= min_count)
    ordered = tuple(sorted(pair for pair, count in pair_counts.items() if count >= min_count))
    unordered = tuple(sorted(pair for pair, count in unordered_counts.items() if count >= min_count))
    return TargetSet(
        unigrams=unigrams,
        ordered=ordered,
        unordered=unordered,
        ordered_counts=dict(pair_counts),
        unordered_counts=dict(unordered_counts),
    )


def phrase_pairs(keys: Sequence[TargetKey], kind: TargetKind) -> List[Tuple[int, int]]:
    return [tuple(key.words) for key in keys if key.kind is kind]
