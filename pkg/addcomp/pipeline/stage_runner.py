from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Mapping, Optional, Sequence, Tuple

from ..config import LabConfig
from ..corpus.table import CoocTable, read_table, render_table, render_table_vocab, vocab_path_for
from ..corpus.vocab import read_corpus
from ..reduce.embedding import EmbeddingSet
from ..utils import atomic_write_text, render_json, render_tsv, report_header
from ..vectors.space import VectorSpace, build_space
from .types import LabArtifact, PipelineStageError

logger = logging.getLogger(__name__)


class PipelineStageRunner:
    """Common bookkeeping for a tool run, standalone or inside a pipeline.

    Upstream artifact objects take precedence; standalone runs fall back to the
    files named on the command line or in the config.
    """

    def __init__(
        self,
        stage_name: str,
        args,
        artifact: Optional[LabArtifact],
        config: LabConfig,
    ) -> None:
        self.stage_name = stage_name
        self.args = args
        self.artifact = artifact or LabArtifact()
        self.config = config
        self.written: List[Path] = []

    @property
    def out_dir(self) -> Path:
        return Path(self.config.out)

    @property
    def seed(self) -> int:
        return self.config.seed

    def require_sentences(self) -> Tuple[Tuple[str, ...], ...]:
        if self.artifact.sentences is not None:
            return self.artifact.sentences
        path = self.config.corpus.path
        if path is None:
            raise PipelineStageError(
                f"{self.stage_name} needs a corpus: pass --corpus, set corpus.path or run after synth-corpus.",
                stage=self.stage_name,
            )
        return tuple(tuple(sentence) for sentence in read_corpus(Path(path)))

    def require_table(self) -> CoocTable:
        if self.artifact.table is not None:
            return self.artifact.table
        path = getattr(self.args, "table", None)
        if path is None:
            raise PipelineStageError(
                f"{self.stage_name} needs a co-occurrence table: pass --table or run after a count or synth-cooc stage.",
                stage=self.stage_name,
            )
        return read_table(Path(path))

    def require_spaces(self, table: Optional[CoocTable] = None) -> Sequence[VectorSpace]:
        """Spaces for every configured lambda; upstream spaces are reused when they match."""

        wanted = tuple(float(lam) for lam in self.config.vectors.lambdas)
        upstream = self.artifact.spaces
        if upstream and tuple(space.lam for space in upstream) == wanted:
            if all(space.offsets == self.config.vectors.offsets for space in upstream):
                return upstream
        table = table or self.require_table()
        return tuple(
            build_space(table, lam, offsets=self.config.vectors.offsets) for lam in self.config.vectors.lambdas
        )

    def upstream_embeddings(self) -> Optional[EmbeddingSet]:
        return self.artifact.embeddings

    def output_path(self, name: str) -> Path:
        return self.out_dir / name

    def write_text(self, name: str, text: str, *, what: str, header: bool = False) -> Path:
        target = self.output_path(name)
        if header:
            text = report_header(self.config.config_hash, self.seed) + text
        try:
            atomic_write_text(target, text)
        except OSError as exc:
            raise PipelineStageError(f"Failed to write {what} to {target}: {exc}", stage=self.stage_name) from exc
        self.written.append(target)
        print(f"Wrote {what} to {target}")
        return target

    def write_tsv(self, name: str, header: Sequence[str], rows, *, what: str) -> Path:
        text = render_tsv(header, rows, config_hash=self.config.config_hash, seed=self.seed)
        return self.write_text(name, text, what=what)

    def write_json(self, name: str, payload: Mapping[str, object], *, what: str) -> Path:
        text = render_json(payload, config_hash=self.config.config_hash, seed=self.seed)
        return self.write_text(name, text, what=what)

    def write_table(self, name: str, table: CoocTable) -> Path:
        target = self.write_text(name, render_table(table), what="co-occurrence table")
        self.write_text(vocab_path_for(target).name, render_table_vocab(table), what="table vocabulary")
        return target


def lambda_tag(lam: float) -> str:
    """File-name fragment for a lambda value: 0.25 -> 0.25, -1 -> m1."""

    return f"{lam:g}".replace("-", "m")
