from __future__ import annotations

import logging
from typing import List, Sequence

from ..config import LabConfig
from ..corpus.table import CoocTable
from ..corpus.targets import TargetKind
from ..errors import StatisticsError
from ..pipeline.stage_runner import PipelineStageRunner, lambda_tag
from ..pipeline.types import LabArtifact
from ..tools import register_tool
from ..tools.base import LabTool, add_lambda_argument, add_table_argument
from ..vectors.export import render_vectors
from ..vectors.space import OFFSET_MODES, norm_statistics

logger = logging.getLogger(__name__)


def norm_kinds(table: CoocTable) -> List[TargetKind]:
    """Word and phrase kinds whose norms are reported for a table."""

    if table.nearfar:
        return [TargetKind.NEARFAR_LEFT, TargetKind.NEARFAR_RIGHT, TargetKind.ORDERED]
    return [TargetKind.UNIGRAM, TargetKind.UNORDERED]


def add_space_arguments(parser) -> None:
    add_table_argument(parser)
    add_lambda_argument(parser)
    parser.add_argument("--offsets", choices=OFFSET_MODES, help="How the per-target offsets a are set.")


def space_overrides(args) -> dict:
    return {"vectors.lambdas": args.lambdas, "vectors.offsets": args.offsets}


class VectorsTool(LabTool):
    name = "vectors"
    help_text = "Build natural vectors for every lambda and export them as TSV."

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)

    def overrides(self, args) -> dict:
        return space_overrides(args)

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        return [f"vectors_l{lambda_tag(lam)}.tsv" for lam in config.vectors.lambdas]

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        spaces = runner.require_spaces(table)
        for space in spaces:
            text = render_vectors(space, config_hash=runner.config.config_hash, seed=runner.seed)
            runner.write_text(f"vectors_l{lambda_tag(space.lam)}.tsv", text, what=f"vectors ({space.fspec.label})")
        return runner.artifact.evolve(table=table, spaces=tuple(spaces))


class NormsTool(LabTool):
    name = "norms"
    help_text = "Report the mean and spread of vector norms per lambda and target kind."
    outputs = ("norms.tsv",)

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        parser.add_argument("--bins", type=int, default=20, help="Histogram bins per lambda and kind.")

    def overrides(self, args) -> dict:
        return space_overrides(args)

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        return ["norms.tsv"] + [f"norms_hist_l{lambda_tag(lam)}.tsv" for lam in config.vectors.lambdas]

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        spaces = runner.require_spaces(table)
        grid = []
        for space in spaces:
            histogram = []
            for kind in norm_kinds(table):
                try:
                    stats = norm_statistics(space, kind, bins=runner.args.bins)
                except StatisticsError as exc:
                    logger.warning("%s: %s", space.fspec.label, exc)
                    continue
                grid.append((space.lam, stats.kind, stats.count, stats.mean, stats.std))
                histogram.extend((stats.kind,) + row for row in stats.histogram_rows())
            runner.write_tsv(
                f"norms_hist_l{lambda_tag(space.lam)}.tsv",
                ("kind", "bin_low", "bin_high", "count"),
                histogram,
                what=f"norm histogram ({space.fspec.label})",
            )
        if not grid:
            raise StatisticsError("No target kind has enough targets for norm statistics.")
        runner.write_tsv("norms.tsv", ("lambda", "kind", "count", "mean", "std"), grid, what="norm grid")
        return runner.artifact.evolve(table=table, spaces=tuple(spaces))


vectors_tool = VectorsTool()
register_tool(vectors_tool, category="vectors")
norms_tool = NormsTool()
register_tool(norms_tool, category="vectors")
