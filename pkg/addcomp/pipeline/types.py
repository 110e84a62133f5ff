from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from ..corpus.table import CoocTable
from ..corpus.vocab import Vocabulary
from ..errors import LabError
from ..reduce.embedding import EmbeddingSet
from ..vectors.space import VectorSpace


@dataclass(frozen=True)
class LabArtifact:
    """Payload handed from one pipeline stage to the next."""

    sentences: Optional[Tuple[Tuple[str, ...], ...]] = None
    vocab: Optional[Vocabulary] = None
    table: Optional[CoocTable] = None
    spaces: Tuple[VectorSpace, ...] = ()
    embeddings: Optional[EmbeddingSet] = None

    @classmethod
    def from_sentences(cls, sentences: Sequence[Sequence[str]]) -> "LabArtifact":
        return cls(sentences=tuple(tuple(sentence) for sentence in sentences))

    def evolve(self, **changes) -> "LabArtifact":
        return replace(self, **changes)

    @property
    def empty(self) -> bool:
        return (
            self.sentences is None
            and self.vocab is None
            and self.table is None
            and not self.spaces
            and self.embeddings is None
        )


class PipelineStageError(LabError):
    """Raised when a pipeline stage encounters an unrecoverable error."""

    code = "pipeline"
