from __future__ import annotations

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import LabConfig
from ..corpus.table import CoocTable
from ..corpus.targets import TargetKey
from ..errors import ParameterError
from ..pipeline.stage_runner import PipelineStageRunner, lambda_tag
from ..pipeline.types import LabArtifact
from ..reduce.embedding import EmbeddingSet, embed, render_embeddings
from ..reduce.factorize import LossInputs, sgd_factorize
from ..reduce.losses import LOSS_KINDS, LossSpec
from ..reduce.svd import SVDResult
from ..tools import register_tool
from ..tools.base import LabTool
from ..vectors.space import VectorSpace, build_space
from .vectors import add_space_arguments, norm_kinds, space_overrides

logger = logging.getLogger(__name__)


def embedding_keys(table: CoocTable) -> List[TargetKey]:
    """Word and phrase targets that get reduced vectors."""

    keys: List[TargetKey] = []
    for kind in norm_kinds(table):
        keys.extend(table.keys(kind))
    if not keys:
        raise ParameterError("The table has no word or phrase targets to reduce.")
    return keys


def effective_dim(wanted: int, shape: Tuple[int, int]) -> int:
    limit = min(shape)
    if wanted < 1:
        raise ParameterError(f"reduce.dim must be >= 1; got {wanted}.")
    if wanted > limit:
        logger.warning("reduce.dim=%d exceeds the matrix rank bound %d; using %d", wanted, limit, limit)
        return limit
    return wanted


def svd_embeddings(
    space: VectorSpace, config: LabConfig, seed: int, keys: Optional[Sequence[TargetKey]] = None
) -> Tuple[EmbeddingSet, SVDResult]:
    keys = list(keys) if keys is not None else embedding_keys(space.table)
    matrix = space.matrix(keys)
    reduce = config.reduce
    return embed(
        matrix,
        effective_dim(reduce.dim, matrix.shape),
        reduce.normalize,
        seed,
        [key.render(space.vocab) for key in keys],
        oversample=reduce.oversample,
        power_iters=reduce.power_iters,
    )


def _add_dim_argument(parser) -> None:
    parser.add_argument("--dim", type=int, help="Embedding dimension d (reduce.dim).")


class SVDTool(LabTool):
    name = "svd"
    help_text = "Reduce natural vectors to d dimensions with a randomized truncated SVD."

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        _add_dim_argument(parser)
        parser.add_argument(
            "--normalize",
            action="store_true",
            default=None,
            help="Scale embeddings to unit length (reduce.normalize).",
        )
        parser.add_argument("--no-normalize", dest="normalize", action="store_false", help="Keep raw embedding norms.")

    def overrides(self, args) -> dict:
        return dict(space_overrides(args), **{"reduce.dim": args.dim, "reduce.normalize": args.normalize})

    def output_names(self, args, config: LabConfig) -> Sequence[str]:
        names: List[str] = []
        for lam in config.vectors.lambdas:
            names.extend([f"embeddings_l{lambda_tag(lam)}.tsv", f"spectrum_l{lambda_tag(lam)}.tsv"])
        return names

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        table = runner.require_table()
        spaces = runner.require_spaces(table)
        keys = embedding_keys(table)
        first: Optional[EmbeddingSet] = None
        for space in spaces:
            embeddings, result = svd_embeddings(space, runner.config, runner.seed, keys)
            tag = lambda_tag(space.lam)
            runner.write_text(
                f"embeddings_l{tag}.tsv",
                render_embeddings(embeddings, config_hash=runner.config.config_hash, seed=runner.seed),
                what=f"SVD embeddings ({space.fspec.label})",
            )
            runner.write_tsv(
                f"spectrum_l{tag}.tsv",
                ("rank", "sigma"),
                [(rank, sigma) for rank, sigma in enumerate(result.sigma, start=1)],
                what=f"singular values ({space.fspec.label})",
            )
            if first is None:
                first = embeddings
        return runner.artifact.evolve(table=table, spaces=tuple(spaces), embeddings=first)


def factorization_inputs(table: CoocTable, keys: Sequence[TargetKey], space: VectorSpace, spec: LossSpec):
    """Target matrix and loss side information over the context dimensions seen at least once."""

    marginals = table.column_marginals()
    seen = marginals > 0
    if not np.any(seen):
        raise ParameterError("The table has no context counts.")
    counts = np.vstack([table.dense_counts(key)[seen] for key in keys]).astype(np.float64)
    totals = counts.sum(axis=1, keepdims=True)
    p_target = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    noise = marginals[seen] / marginals[seen].sum()
    occurrences = np.asarray([float(table.occurrences(key)) for key in keys])

    if spec.kind == "l2":
        targets = space.matrix(keys)[:, seen]
        return targets, LossInputs()
    if spec.kind == "glove":
        # Zero counts get zero weight, so their target value is irrelevant.
        targets = np.log(np.maximum(counts, 1.0))
        return targets, LossInputs(counts=counts)
    with np.errstate(divide="ignore"):
        targets = np.log(p_target) - np.log(spec.k * noise)[None, :]
    return targets, LossInputs(p_target=p_target, noise=noise, occurrences=occurrences)


class FactorizeTool(LabTool):
    name = "factorize"
    help_text = "Fit target vectors by stochastic gradient descent on an l2, glove or sgns loss."
    outputs = ("factorized_embeddings.tsv", "training_log.tsv")

    def configure_parser(self, parser) -> None:
        add_space_arguments(parser)
        _add_dim_argument(parser)
        parser.add_argument("--loss", choices=LOSS_KINDS, help="Entry loss (reduce.loss).")
        parser.add_argument("--epochs", type=int, help="Training epochs (reduce.epochs).")
        parser.add_argument("--learning-rate", type=float, help="Initial learning rate (reduce.learning_rate).")
        parser.add_argument("--k", type=float, help="Negative samples of the sgns loss (reduce.k).")

    def overrides(self, args) -> dict:
        return dict(
            space_overrides(args),
            **{
                "reduce.dim": args.dim,
                "reduce.loss": args.loss,
                "reduce.epochs": args.epochs,
                "reduce.learning_rate": args.learning_rate,
                "reduce.k": args.k,
            },
        )

    def execute(self, runner: PipelineStageRunner) -> LabArtifact:
        reduce = runner.config.reduce
        table = runner.require_table()
        spaces = runner.require_spaces(table)
        # The l2 target is the natural vector of the first lambda.
        space = spaces[0]
        if len(spaces) > 1:
            logger.info("factorizing the %s space only", space.fspec.label)
        keys = embedding_keys(table)
        spec = LossSpec(reduce.loss, x_max=reduce.x_max, k=reduce.k)
        targets, inputs = factorization_inputs(table, keys, space, spec)
        result = sgd_factorize(
            targets,
            effective_dim(reduce.dim, targets.shape),
            spec,
            epochs=reduce.epochs,
            learning_rate=reduce.learning_rate,
            decay=reduce.decay,
            batch_size=reduce.batch_size,
            seed=runner.seed,
            labels=[key.render(table.vocab) for key in keys],
            inputs=inputs,
        )
        embeddings = result.embeddings.normalize() if reduce.normalize else result.embeddings
        runner.write_text(
            "factorized_embeddings.tsv",
            render_embeddings(embeddings, config_hash=runner.config.config_hash, seed=runner.seed),
            what=f"{spec.kind} embeddings",
        )
        runner.write_tsv("training_log.tsv", ("epoch", "loss"), result.log_rows(), what="training log")
        return runner.artifact.evolve(table=table, spaces=tuple(spaces), embeddings=embeddings)


svd_tool = SVDTool()
register_tool(svd_tool, category="reduce")
factorize_tool = FactorizeTool()
register_tool(factorize_tool, category="reduce")
