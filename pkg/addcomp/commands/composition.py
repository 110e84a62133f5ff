from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Sequence, Tuple

from ..composition.additive import compose_additive
from ..composition.neighbors import nearest_neighbors
from ..composition.report import bias_report, report_phrases
from ..config import LabConfig
from ..corpus.table import CoocTable
from ..errors import CorpusDecodeError, InputFileError, ParameterError
from ..pipeline.stage_runner import PipelineStageRunner, lambda_tag
from ..pipeline.types import LabArtifact
from ..tools import register_tool
from ..tools.base import LabTool
from ..vectors.space import default_phrase_keys
from .vectors import add_space_arguments, space_overrides

logger = logging.getLogger(__name__)

PhraseList = List[Tuple[str, str]]


def read_phrase_list(path: Path) -> PhraseList:
    """Word pairs ``s<TAB>t``, one per line; blank and ``#`` lines are skipped."""

    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Phrase list not found: {path}")
    pairs: PhraseList = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not all(fields):
            raise CorpusDecodeError(f"{path}:{number}: expected 's<TAB>t'")
        pairs.append((fields[0], fields[1]))
    return pairs


def _token(table: CoocTable, word) -> str:
    return table.vocab.token_of(table.vocab.id_of(word))


def _phrases(runner: PipelineStageRunner, table: CoocTable):
    if runner.args.phrases is not None:
        return read_phrase_list(runner.args.phrases)
    return report_phrases(table)


class BiasTool(LabTool):
    name = "bias"
    help_text = "Compare the bias of additive composition with its collocation bound."
    mode = "ordinary"
    file_args = ("phrases",)

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        parser.add_argument("--epsilon", type=float, help="Slack when counting bound violations (bias.epsilon).")
        parser.add_argument("--phrases", type=Path, help="Word pairs to report (default: every counted phrase).")

    def overrides(self, args) -> dict:
        return dict(space_overrides(args), **{"bias.epsilon": args.epsilon})

    def _stem(self, lam: float) -> str:
        return f"{self.name.replace('-', '_')}_l{lambda_tag(lam)}"

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        names: List[str] = []
        for lam in config.vectors.lambdas:
            names.extend([self._stem(lam) + ".tsv", self._stem(lam) + ".json"])
        return names

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        expected = self.mode == "nearfar"
        if table.nearfar != expected:
            raise ParameterError(f"{self.name} needs a {'Near-far' if expected else 'ordinary'} table.")
        phrases = _phrases(runner, table)
        spaces = runner.require_spaces(table)
        for space in spaces:
            report = bias_report(space, table, phrases, self.mode, epsilon=runner.config.bias.epsilon)
            stem = self._stem(space.lam)
            runner.write_tsv(stem + ".tsv", report.header, report.rows(), what=f"bias scatter ({space.fspec.label})")
            summary = dict(report.summary(), **{"lambda": space.lam, "mode": self.mode})
            runner.write_json(stem + ".json", summary, what=f"bias summary ({space.fspec.label})")
        return runner.artifact.evolve(table=table, spaces=tuple(spaces))


class NearFarBiasTool(BiasTool):
    name = "nearfar-bias"
    help_text = "Bias report of a Near-far table, with the reversed-order comparison."
    mode = "nearfar"


class NeighborsTool(LabTool):
    name = "neighbors"
    help_text = "List the phrase targets nearest to the additive composition of each phrase."
    file_args = ("phrases",)

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        parser.add_argument("-k", type=int, default=5, help="Neighbours per phrase.")
        parser.add_argument("--phrases", type=Path, help="Word pairs to query (default: counted phrases).")
        parser.add_argument("--max-queries", type=int, default=100, help="Query at most this many default phrases.")

    def overrides(self, args) -> dict:
        return space_overrides(args)

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        return [f"neighbors_l{lambda_tag(lam)}.tsv" for lam in config.vectors.lambdas]

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        phrases = _phrases(runner, table)
        if runner.args.phrases is None:
            phrases = phrases[: runner.args.max_queries]
        if not phrases:
            raise ParameterError("no phrases: nothing to query.")
        candidates = default_phrase_keys(table)
        labels = [key.render(table.vocab) for key in candidates]
        spaces = runner.require_spaces(table)
        for space in spaces:
            matrix = space.matrix(candidates)
            rows = []
            for s, t in phrases:
                query = compose_additive(space, s, t)
                phrase = f"{_token(table, s)} {_token(table, t)}"
                for rank, (label, score) in enumerate(nearest_neighbors(labels, matrix, query, runner.args.k), start=1):
                    rows.append((phrase, rank, label, score))
            runner.write_tsv(
                f"neighbors_l{lambda_tag(space.lam)}.tsv",
                ("phrase", "rank", "neighbor", "cosine"),
                rows,
                what=f"nearest neighbours ({space.fspec.label})",
            )
        return runner.artifact.evolve(table=table, spaces=tuple(spaces))


bias_tool = BiasTool()
register_tool(bias_tool, category="composition")
nearfar_bias_tool = NearFarBiasTool()
register_tool(nearfar_bias_tool, category="composition")
neighbors_tool = NeighborsTool()
register_tool(neighbors_tool, category="composition")
