"""Dimension reduction of natural-vector matrices."""

from .embedding import EmbeddingSet, embed, read_embeddings, render_embeddings
from .factorize import Factorization, LossInputs, sgd_factorize
from .losses import (
    LOSS_KINDS,
    LossSpec,
    exp_bregman,
    glove_weight,
    loss_eval,
    loss_grad,
    sgns_asymmetry,
    sgns_limit_check,
    sgns_objective,
    sgns_optimum,
)
from .svd import SVDResult, truncated_svd

__all__ = [
    "EmbeddingSet",
    "Factorization",
    "LOSS_KINDS",
    "LossInputs",
    "LossSpec",
    "SVDResult",
    "embed",
    "exp_bregman",
    "glove_weight",
    "loss_eval",
    "loss_grad",
    "read_embeddings",
    "render_embeddings",
    "sgd_factorize",
    "sgns_asymmetry",
    "sgns_limit_check",
    "sgns_objective",
    "sgns_optimum",
    "truncated_svd",
]
