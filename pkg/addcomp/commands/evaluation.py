from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from ..evaluation.analogy import analogy_eval
from ..evaluation.datasets import load_analogy_dataset, load_phrase_dataset
from ..evaluation.phrase import COMPOSERS, phrase_similarity_eval
from ..pipeline.stage_runner import PipelineStageRunner
from ..pipeline.types import LabArtifact
from ..reduce.embedding import EmbeddingSet, read_embeddings
from ..tools import register_tool
from ..tools.base import LabTool
from .reduce import embedding_keys, svd_embeddings
from .vectors import add_space_arguments, space_overrides

logger = logging.getLogger(__name__)

# (run seed, embeddings, nearfar)
EvalRun = Tuple[int, EmbeddingSet, bool]


def _looks_nearfar(embeddings: EmbeddingSet) -> bool:
    return any(label.endswith("•") or label.startswith("•") for label in embeddings.labels)


class EvalTool(LabTool):
    """Shared embedding resolution for the evaluation harnesses.

    Embeddings come from the upstream stage, from ``--embeddings`` or, failing
    both, from ``eval.runs`` SVD reductions of the table seeded seed, seed+1, ...
    """

    file_args = ("embeddings",)
    dataset_key: str

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        parser.add_argument("--embeddings", type=Path, help="Embeddings TSV written by svd or factorize.")
        parser.add_argument("--dataset", type=Path, help=f"Dataset TSV ({self.dataset_key}).")
        parser.add_argument("--dim", type=int, help="Embedding dimension d (reduce.dim).")
        parser.add_argument("--runs", type=int, help="Seeded reductions to evaluate (eval.runs).")

    def overrides(self, args) -> dict:
        dataset = str(args.dataset) if args.dataset is not None else None
        return dict(
            space_overrides(args),
            **{self.dataset_key: dataset, "reduce.dim": args.dim, "eval.runs": args.runs},
        )

    def dataset_path(self, runner: PipelineStageRunner) -> Path:
        section, _, key = self.dataset_key.partition(".")
        raw = getattr(getattr(runner.config, section), key)
        if raw is None:
            raise ParameterError(f"{self.name} needs a dataset: pass --dataset or set {self.dataset_key}.")
        return Path(raw)

    def eval_runs(self, runner: PipelineStageRunner) -> Tuple[List[EvalRun], LabArtifact]:
        fixed: Optional[EmbeddingSet] = None
        if runner.args.embeddings is not None:
            fixed = read_embeddings(runner.args.embeddings)
        elif runner.upstream_embeddings() is not None:
            fixed = runner.upstream_embeddings()
        if fixed is not None:
            if runner.config.eval.runs > 1:
                logger.warning("eval.runs=%d ignored for fixed embeddings", runner.config.eval.runs)
            nearfar = runner.artifact.table.nearfar if runner.artifact.table is not None else _looks_nearfar(fixed)
            return [(runner.seed, fixed, nearfar)], runner.artifact

        table = runner.require_table()
        spaces = runner.require_spaces(table)
        if len(spaces) > 1:
            logger.info("evaluating the %s space only", spaces[0].fspec.label)
        keys = embedding_keys(table)
        runs = []
        for offset in range(runner.config.eval.runs):
            seed = runner.seed + offset
            embeddings, _ = svd_embeddings(spaces[0], runner.config, seed, keys)
            runs.append((seed, embeddings, table.nearfar))
        return runs, runner.artifact.evolve(table=table, spaces=tuple(spaces), embeddings=runs[0][1])


def _spread(values: List[float]) -> Dict[str, object]:
    finite = [value for value in values if np.isfinite(value)]
    if not finite:
        return {"mean": None, "std": None}
    return {"mean": float(np.mean(finite)), "std": float(np.std(finite))}


class EvalPhraseTool(EvalTool):
    name = "eval-phrase"
    help_text = "Spearman's rho between phrase similarities of the embeddings and human scores."
    outputs = ("eval_phrase.json",)
    dataset_key = "eval.phrase_dataset"

    def configure_parser(self, parser) -> None:
        super().configure_parser(parser)
        parser.add_argument("--composer", choices=COMPOSERS, default="additive", help="Phrase composition.")

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        dataset = load_phrase_dataset(self.dataset_path(runner))
        runs, artifact = self.eval_runs(runner)
        per_run = []
        rhos: Dict[str, List[float]] = {}
        for seed, embeddings, nearfar in runs:
            results = phrase_similarity_eval(embeddings, dataset, runner.args.composer, nearfar=nearfar)
            per_run.append({"seed": seed, "categories": {name: r.as_dict() for name, r in results.items()}})
            for name, result in results.items():
                rhos.setdefault(name, []).append(result.rho)
        payload = {
            "composer": runner.args.composer,
            "nearfar": runs[0][2],
            "rows": len(dataset),
            "runs": per_run,
            "rho": {name: _spread(values) for name, values in sorted(rhos.items())},
        }
        runner.write_json("eval_phrase.json", payload, what="phrase similarity evaluation")
        return artifact


class EvalAnalogyTool(EvalTool):
    name = "eval-analogy"
    help_text = "Word analogy accuracy of the embeddings by the nearest-cosine rule."
    outputs = ("eval_analogy.json",)
    dataset_key = "eval.analogy_dataset"

    def configure_parser(self, parser) -> None:
        super().configure_parser(parser)
        parser.add_argument(
            "--keep-inputs",
            action="store_true",
            help="Let a, b and c themselves be answers.",
        )

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        dataset = load_analogy_dataset(self.dataset_path(runner))
        runs, artifact = self.eval_runs(runner)
        per_run = []
        for seed, embeddings, _ in runs:
            result = analogy_eval(embeddings, dataset, exclude_inputs=not runner.args.keep_inputs)
            per_run.append(dict(result.as_dict(), seed=seed))
        payload = {
            "rows": len(dataset),
            "runs": per_run,
            "accuracy": _spread([run["accuracy"] for run in per_run]),
        }
        runner.write_json("eval_analogy.json", payload, what="analogy evaluation")
        return artifact


eval_phrase_tool = EvalPhraseTool()
register_tool(eval_phrase_tool, category="evaluation")
eval_analogy_tool = EvalAnalogyTool()
register_tool(eval_analogy_tool, category="evaluation")
