from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from ..config import LabConfig
from ..corpus.table import CoocTable
from ..corpus.targets import TargetKind
from ..errors import CorpusDecodeError, FitError, InputFileError, ParameterError, ReportError
from ..pipeline.stage_runner import PipelineStageRunner
from ..pipeline.types import LabArtifact
from ..stats.chisq import chisq_index1_test
from ..stats.independence import (
    PAIR_KINDS,
    context_probabilities,
    context_ratios,
    independence_report,
    ranked_ratio_profile,
    ratio_categories,
)
from ..stats.powerlaw import fit_power_law
from ..tools import register_tool
from ..tools.base import LabTool, add_table_argument

logger = logging.getLogger(__name__)

_FIT_COLUMNS = ("alpha", "density_exponent", "m", "ks", "n_tail")


def context_label(cooc: CoocTable, i: int) -> str:
    """Token of a context dimension; Near-far dimensions carry an N or F suffix."""

    if cooc.nearfar:
        return f"{cooc.vocab.token_of(i // 2)}/{'F' if i % 2 else 'N'}"
    return cooc.vocab.token_of(i)


def top_contexts(cooc: CoocTable, count: int) -> List[int]:
    """The ``count`` most probable context dimensions, ties broken by dimension id."""

    if count < 1:
        raise ParameterError("--contexts must be >= 1.")
    p = context_probabilities(cooc)
    order = np.lexsort((np.arange(p.size), -p))
    return [int(i) for i in order[:count] if p[i] > 0]


def read_category_counts(path: Path) -> List[Tuple[str, Tuple[int, ...]]]:
    """Rows ``word<TAB>c1<TAB>...<TAB>c5``; blank and ``#`` lines are skipped."""

    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Category count file not found: {path}")
    rows = []
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise CorpusDecodeError(f"{path}:{number}: expected a word and 5 counts")
        try:
            counts = tuple(int(value) for value in fields[1:])
        except ValueError:
            raise CorpusDecodeError(f"{path}:{number}: counts must be integers") from None
        rows.append((fields[0], counts))
    return rows


def read_sample(path: Path) -> np.ndarray:
    """One positive number per line."""

    path = Path(path)
    if not path.is_file():
        raise InputFileError(f"Sample file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    try:
        return np.asarray([float(line) for line in lines if line.strip() and not line.startswith("#")])
    except ValueError as exc:
        raise CorpusDecodeError(f"{path}: {exc}") from None


def _fit_row(fit) -> Tuple[object, ...]:
    return (fit.alpha, fit.density_exponent, fit.m, fit.ks, fit.n_tail)


class PowerLawTool(LabTool):
    name = "powerlaw"
    help_text = "Fit power-law tails to the probability ratios of frequent context words."
    outputs = ("powerlaw.tsv", "powerlaw.json")
    file_args = ("sample",)

    def configure_parser(self, parser) -> None:
        add_table_argument(parser)
        parser.add_argument("--sample", type=Path, help="Fit this file of positive numbers instead of a table.")
        parser.add_argument("--contexts", type=int, default=10, help="Number of most frequent context dimensions.")
        parser.add_argument("--m", type=float, help="Fix the lower bound instead of scanning for it.")
        parser.add_argument(
            "--profile",
            action="store_true",
            help="Also write the ranked ratio profile of word and phrase targets.",
        )

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        names = list(self.outputs)
        if getattr(args, "profile", False):
            names.append("ratio_profile.tsv")
        return names

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        args = runner.args
        if args.sample is not None:
            fit = fit_power_law(read_sample(args.sample), m=args.m)
            runner.write_tsv(
                "powerlaw.tsv", ("source",) + _FIT_COLUMNS, [("sample",) + _fit_row(fit)], what="power-law fit"
            )
            runner.write_json("powerlaw.json", fit.as_dict(), what="power-law fit")
            return runner.artifact

        table = runner.require_table()
        rows = []
        for i in top_contexts(table, args.contexts):
            ratios = context_ratios(table, i)
            try:
                fit = fit_power_law(ratios[ratios > 0], m=args.m)
            except (FitError, ParameterError) as exc:
                logger.warning("context %s: %s", context_label(table, i), exc)
                continue
            rows.append((context_label(table, i),) + _fit_row(fit))
        if not rows:
            raise ReportError("No context dimension produced a power-law fit.")
        runner.write_tsv("powerlaw.tsv", ("context",) + _FIT_COLUMNS, rows, what="power-law fits")
        alphas = [row[1] for row in rows]
        runner.write_json(
            "powerlaw.json",
            {"contexts": len(rows), "mean_alpha": float(np.mean(alphas)), "median_alpha": float(np.median(alphas))},
            what="power-law summary",
        )
        if args.profile:
            profile_rows = []
            kinds = (
                (TargetKind.NEARFAR_LEFT, TargetKind.ORDERED)
                if table.nearfar
                else (TargetKind.UNIGRAM, TargetKind.UNORDERED)
            )
            for kind in kinds:
                if not table.keys(kind):
                    continue
                for rank, value in enumerate(ranked_ratio_profile(table, kind), start=1):
                    profile_rows.append((kind.value, rank, value))
            runner.write_tsv("ratio_profile.tsv", ("kind", "rank", "mean_ratio"), profile_rows, what="ratio profile")
        return runner.artifact.evolve(table=table)


class ChisqTool(LabTool):
    name = "chisq"
    help_text = "Chi-square test of the index-1 tail on five ratio categories per context word."
    outputs = ("chisq.tsv", "chisq.json")
    file_args = ("counts",)

    def configure_parser(self, parser) -> None:
        add_table_argument(parser)
        parser.add_argument("--counts", type=Path, help="Category counts 'word<TAB>c1..c5' instead of a table.")
        parser.add_argument("--contexts", type=int, default=10, help="Number of most frequent context dimensions.")

    def _category_rows(self, runner: PipelineStageRunner) -> Tuple[List[Tuple[str, Tuple[int, ...]]], LabArtifact]:
        if runner.args.counts is not None:
            return read_category_counts(runner.args.counts), runner.artifact
        table = runner.require_table()
        rows = [
            (context_label(table, i), tuple(int(c) for c in ratio_categories(table, i)))
            for i in top_contexts(table, runner.args.contexts)
        ]
        return rows, runner.artifact.evolve(table=table)

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        category_rows, artifact = self._category_rows(runner)
        if not category_rows:
            raise ReportError("No category counts to test.")
        rows = []
        passed = 0
        for word, counts in category_rows:
            try:
                result = chisq_index1_test(counts)
            except ParameterError as exc:
                logger.warning("skipping %s: %s", word, exc)
                continue
            passed += int(result.passed)
            rows.append((word,) + counts + (result.m_star, result.chi2, result.p_value, int(result.passed)))
        if not rows:
            raise ReportError("No row has enough category counts for the chi-square test.")
        runner.write_tsv(
            "chisq.tsv",
            ("word", "c1", "c2", "c3", "c4", "c5", "m_star", "chi2", "p_value", "passed"),
            rows,
            what="chi-square tests",
        )
        runner.write_json(
            "chisq.json",
            {"tested": len(rows), "passed": passed, "pass_fraction": passed / len(rows)},
            what="chi-square summary",
        )
        return artifact


class IndependenceTool(LabTool):
    name = "independence"
    help_text = "Histogram of Spearman's rho between probability series expected to be unrelated."

    def configure_parser(self, parser) -> None:
        add_table_argument(parser)
        parser.add_argument("--kind", choices=PAIR_KINDS, default="unigram", help="Which series are correlated.")
        parser.add_argument("--pairs", type=int, default=1000, help="Number of sampled series pairs.")

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        stem = f"independence_{args.kind}"
        return [stem + ".tsv", stem + ".json"]

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        report = independence_report(table, runner.args.kind, runner.args.pairs, runner.seed)
        stem = f"independence_{runner.args.kind}"
        runner.write_tsv(stem + ".tsv", ("bin_low", "bin_high", "count"), report.rows(), what="rho histogram")
        runner.write_json(stem + ".json", report.summary(), what="independence summary")
        return runner.artifact.evolve(table=table)


powerlaw_tool = PowerLawTool()
register_tool(powerlaw_tool, category="stats")
chisq_tool = ChisqTool()
register_tool(chisq_tool, category="stats")
independence_tool = IndependenceTool()
register_tool(independence_tool, category="stats")
