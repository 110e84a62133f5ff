from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ParameterError, TrainingError
from ..genmodel.rng import make_rng
from .embedding import EmbeddingSet
from .losses import LossSpec, loss_eval, loss_grad

logger = logging.getLogger(__name__)

DIVERGENCE_FACTOR = 10.0


@dataclass(frozen=True)
class LossInputs:
    """Per-entry side information of the glove and sgns losses, aligned with the target matrix."""

    counts: Optional[np.ndarray] = None
    p_target: Optional[np.ndarray] = None
    noise: Optional[np.ndarray] = None
    occurrences: Optional[np.ndarray] = None

    def rows(self, index: np.ndarray) -> dict:
        out = {}
        if self.counts is not None:
            out["count"] = self.counts[index]
        if self.p_target is not None:
            out["p_target"] = self.p_target[index]
        if self.noise is not None:
            out["noise"] = self.noise[None, :]
        if self.occurrences is not None:
            out["occurrences"] = self.occurrences[index][:, None]
        return out


@dataclass(frozen=True)
class Factorization:
    embeddings: EmbeddingSet
    context_factor: np.ndarray
    losses: Tuple[float, ...]

    def reconstruct(self) -> np.ndarray:
        return self.embeddings.vectors @ self.context_factor.T

    def log_rows(self) -> List[Tuple[int, float]]:
        return list(enumerate(self.losses))


def _total_loss(spec: LossSpec, targets: np.ndarray, model: np.ndarray, inputs: LossInputs) -> float:
    index = np.arange(targets.shape[0])
    return float(np.sum(loss_eval(spec, model, targets, **inputs.rows(index))))


def sgd_factorize(
    targets: np.ndarray,
    d: int,
    spec: LossSpec,
    *,
    epochs: int = 200,
    learning_rate: float = 0.05,
    decay: float = 0.0,
    batch_size: int = 64,
    seed: int = 0,
    labels: Optional[Sequence[str]] = None,
    inputs: Optional[LossInputs] = None,
    init_scale: float = 0.1,
) -> Factorization:
    """Minimize Σ loss(v^t · u_i, w^t_i) by mini-batch gradient descent over target rows.

    The learning rate at epoch e is learning_rate / (1 + decay * e). The
    shuffle and the initial factors come from the seed, so a run is
    deterministic.
    """

    targets = np.asarray(targets, dtype=np.float64)
    if targets.ndim != 2:
        raise ParameterError("The target matrix must be two-dimensional.")
    n, m = targets.shape
    if not 1 <= d <= min(n, m):
        raise ParameterError(f"d must lie in [1, {min(n, m)}]; got {d}.")
    if epochs < 1 or batch_size < 1 or learning_rate <= 0:
        raise ParameterError("epochs, batch_size and learning_rate must be positive.")
    inputs = inputs or LossInputs()
    rng = make_rng(seed, "factorize")
    vectors = rng.normal(scale=init_scale, size=(n, d))
    context = rng.normal(scale=init_scale, size=(m, d))

    initial = _total_loss(spec, targets, vectors @ context.T, inputs)
    losses: List[float] = []
    for epoch in range(epochs):
        rate = learning_rate / (1.0 + decay * epoch)
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            index = order[start : start + batch_size]
            block = vectors[index]
            residual = loss_grad(spec, block @ context.T, targets[index], **inputs.rows(index))
            vectors[index] = block - rate * (residual @ context)
            context -= rate * (residual.T @ block)
        loss = _total_loss(spec, targets, vectors @ context.T, inputs)
        if not np.isfinite(loss) or loss > DIVERGENCE_FACTOR * max(initial, 1e-300):
            raise TrainingError(
                f"Training diverged at epoch {epoch}: loss {loss:.6g} against initial {initial:.6g} "
                f"(learning_rate={learning_rate}, d={d})."
            )
        losses.append(loss)
        logger.info("epoch %d: loss %.6g", epoch, loss)

    names = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    return Factorization(
        embeddings=EmbeddingSet(labels=names, vectors=vectors, context_factor=context),
        context_factor=context,
        losses=tuple(losses),
    )
