from __future__ import annotations

import argparse
import logging
from typing import Optional

import numpy as np

from ..errors import FitError, ParameterError, StatisticsError
from ..genmodel.crp import crp_diagnostic, sample_pitman_yor
from ..genmodel.diagnostics import ZipfDiagnostic, zipf_diagnostic
from ..genmodel.emitter import emit_planted_corpus, render_corpus
from ..genmodel.mhpy import sample_mhpy, step_probabilities
from ..genmodel.params import MHPYParams, PYParams
from ..genmodel.synth import synth_cooc
from ..pipeline.stage_runner import PipelineStageRunner
from ..pipeline.types import LabArtifact
from ..stats.powerlaw import fit_power_law
from ..tools import register_tool
from ..tools.base import LabTool
from .corpus import TABLE_NAME

logger = logging.getLogger(__name__)


def _py_params(text: str) -> PYParams:
    try:
        return PYParams.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _zipf_or_none(source) -> Optional[ZipfDiagnostic]:
    try:
        return zipf_diagnostic(source)
    except StatisticsError as exc:
        logger.warning("no Zipf diagnostic: %s", exc)
        return None


def _zipf_summary(diagnostic: Optional[ZipfDiagnostic]) -> dict:
    if diagnostic is None:
        return {"zipf_slope": None, "zipfian": None}
    return {"zipf_slope": diagnostic.slope, "zipfian": diagnostic.zipfian}


class SynthCorpusTool(LabTool):
    name = "synth-corpus"
    help_text = "Emit a small token corpus with planted word pairs and reversed-order occurrences."
    outputs = ("corpus.txt",)
    input_args = ()

    def configure_parser(self, parser) -> None:
        parser.add_argument("--pairs", type=int, default=20, help="Number of planted pairs s{k} t{k}.")
        parser.add_argument("--occurrences", type=int, default=200, help="Forward occurrences of each pair.")
        parser.add_argument(
            "--reverse-fraction",
            type=float,
            default=0.1,
            help="Reversed occurrences as a fraction of forward ones.",
        )

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        args = runner.args
        sentences = emit_planted_corpus(args.pairs, args.occurrences, args.reverse_fraction, runner.seed)
        runner.write_text("corpus.txt", render_corpus(sentences), what="planted corpus")
        return LabArtifact.from_sentences(sentences)


class SimulatePYTool(LabTool):
    name = "simulate-py"
    help_text = "Run the Chinese restaurant process of a Pitman-Yor prior and report its diagnostics."
    outputs = ("py_series.tsv", "py_zipf.tsv", "py.json")
    input_args = ()

    def configure_parser(self, parser) -> None:
        parser.add_argument(
            "--py",
            type=_py_params,
            help="Parameters as 'alpha,theta' (default: synthetic.alpha1, synthetic.theta1).",
        )
        parser.add_argument("--steps", type=int, default=100_000, help="Number of generated tokens.")

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        synthetic = runner.config.synthetic
        params = runner.args.py or PYParams(synthetic.alpha1, synthetic.theta1)
        state = sample_pitman_yor(params, runner.args.steps, runner.seed)
        series = crp_diagnostic(state)
        runner.write_tsv("py_series.tsv", ("step", series.label), series.rows(), what="C/N^(1/alpha) series")
        diagnostic = _zipf_or_none(state)
        if diagnostic is not None:
            runner.write_tsv(
                "py_zipf.tsv", ("rank", diagnostic.series.label), diagnostic.series.rows(), what="Zipf series"
            )
        try:
            relative_change = series.relative_change()
        except StatisticsError as exc:
            logger.warning("no relative change: %s", exc)
            relative_change = None
        summary = {
            "alpha": params.alpha,
            "theta": params.theta,
            "steps": state.total,
            "distinct": state.distinct,
            "final_ratio": float(series.values[-1]),
            "relative_change": relative_change,
        }
        summary.update(_zipf_summary(diagnostic))
        runner.write_json("py.json", summary, what="Pitman-Yor summary")
        return runner.artifact


class SimulateMHPYTool(LabTool):
    name = "simulate-mhpy"
    help_text = "Run the modified hierarchical Pitman-Yor process and fit the tail of its probability ratios."
    outputs = ("mhpy_zipf.tsv", "mhpy.json")
    input_args = ()

    def configure_parser(self, parser) -> None:
        parser.add_argument("--reference", type=_py_params, help="Reference level 'alpha1,theta1'.")
        parser.add_argument("--word", type=_py_params, help="Word level 'alpha2,theta2'.")
        parser.add_argument("--steps", type=int, default=100_000, help="Number of generated tokens.")

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        synthetic = runner.config.synthetic
        reference = runner.args.reference or PYParams(synthetic.alpha1, synthetic.theta1)
        word = runner.args.word or PYParams(synthetic.alpha2, synthetic.theta2)
        params = MHPYParams(reference.alpha, reference.theta, word.alpha, word.theta)
        state = sample_mhpy(params, runner.args.steps, runner.seed)

        diagnostic = _zipf_or_none(np.asarray(state.word_counts))
        if diagnostic is not None:
            runner.write_tsv(
                "mhpy_zipf.tsv", ("rank", diagnostic.series.label), diagnostic.series.rows(), what="Zipf series"
            )
        new_word, new_ref, copy = step_probabilities(state)
        try:
            fit = fit_power_law(state.tail_ratios()).as_dict()
        except (FitError, ParameterError) as exc:
            logger.warning("no tail fit: %s", exc)
            fit = None
        summary = {
            "alpha1": params.alpha1,
            "theta1": params.theta1,
            "alpha2": params.alpha2,
            "theta2": params.theta2,
            "steps": state.total,
            "references": state.n_refs,
            "words": state.n_words,
            "normalizer": state.normalizer,
            "max_drift": state.max_drift,
            "step_probability_sum": new_word + float(new_ref.sum()) + float(copy.sum()),
            "tail_fit": fit,
        }
        summary.update(_zipf_summary(diagnostic))
        runner.write_json("mhpy.json", summary, what="MHPY summary")
        return runner.artifact


class SynthCoocTool(LabTool):
    name = "synth-cooc"
    help_text = "Synthesize a co-occurrence table with planted phrases and exact partition counts."
    outputs = (TABLE_NAME, TABLE_NAME + ".vocab.tsv")
    input_args = ()

    def configure_parser(self, parser) -> None:
        parser.add_argument("--targets", type=int, help="Number of target words (synthetic.n_targets).")
        parser.add_argument("--tokens", type=int, help="Context tokens per target (synthetic.tokens_per_target).")
        parser.add_argument("--phrase-fraction", type=float, help="Fraction of targets paired into phrases.")
        parser.add_argument("--contexts", type=int, help="Number of context types (synthetic.n_context).")
        parser.add_argument("--max-pi", type=float, help="Upper end of the uniform planted pi values.")
        parser.add_argument("--planted-pi", type=float, help="Plant this pi for every phrase instead of drawing it.")

    def overrides(self, args) -> dict:
        return {
            "synthetic.n_targets": args.targets,
            "synthetic.tokens_per_target": args.tokens,
            "synthetic.phrase_fraction": args.phrase_fraction,
            "synthetic.n_context": args.contexts,
            "synthetic.max_pi": args.max_pi,
        }

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        synthetic = runner.config.synthetic
        table = synth_cooc(
            MHPYParams(synthetic.alpha1, synthetic.theta1, synthetic.alpha2, synthetic.theta2),
            PYParams(synthetic.alpha2, synthetic.theta2),
            synthetic.n_targets,
            synthetic.tokens_per_target,
            synthetic.phrase_fraction,
            runner.seed,
            n_context=synthetic.n_context,
            max_pi=synthetic.max_pi,
            planted_pi=runner.args.planted_pi,
        )
        runner.write_table(TABLE_NAME, table)
        return runner.artifact.evolve(vocab=table.vocab, table=table, spaces=(), embeddings=None)


synth_corpus_tool = SynthCorpusTool()
register_tool(synth_corpus_tool, category="genmodel")
simulate_py_tool = SimulatePYTool()
register_tool(simulate_py_tool, category="genmodel")
simulate_mhpy_tool = SimulateMHPYTool()
register_tool(simulate_mhpy_tool, category="genmodel")
synth_cooc_tool = SynthCoocTool()
register_tool(synth_cooc_tool, category="genmodel")
