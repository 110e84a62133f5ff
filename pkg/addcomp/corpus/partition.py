from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from ..errors import TargetLookupError
from .table import CoocTable
from .targets import TargetKey
from .vocab import WordRef


@dataclass(frozen=True)
class Partition:
    """Split of the contexts of ``t`` by whether ``s`` is adjacent to the token."""

    exclusion: Dict[int, int]
    adjacent: Dict[int, int]
    exclusion_occurrences: int
    word_occurrences: int

    @property
    def pi(self) -> float:
        if self.word_occurrences == 0:
            return float("nan")
        return self.exclusion_occurrences / self.word_occurrences


def partition_counts(cooc: CoocTable, s: WordRef, t: WordRef) -> Partition:
    """Return the counts of s/t\\s and of t-with-s-adjacent; they sum to the counts of t.

    Raises TargetLookupError when the pair was not counted as a target, for
    instance because it fell below the bigram minimum count.
    """

    s_id = cooc.vocab.id_of(s)
    t_id = cooc.vocab.id_of(t)
    exclusion_key = TargetKey.exclusion(t_id, s_id)
    adjacent_key = TargetKey.adjacent(t_id, s_id)
    word_key = TargetKey.unigram(t_id)
    for key in (exclusion_key, adjacent_key, word_key):
        if key not in cooc:
            raise TargetLookupError(
                f"No partition of {cooc.vocab.token_of(t_id)} by {cooc.vocab.token_of(s_id)}: "
                f"target {key.render(cooc.vocab)} was not counted."
            )
    return Partition(
        exclusion=cooc.counts(exclusion_key),
        adjacent=cooc.counts(adjacent_key),
        exclusion_occurrences=cooc.occurrences(exclusion_key),
        word_occurrences=cooc.occurrences(word_key),
    )
