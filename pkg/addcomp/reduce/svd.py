from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import sparse

from ..errors import ParameterError
from ..genmodel.rng import make_rng

logger = logging.getLogger(__name__)

Matrix = Union[np.ndarray, sparse.spmatrix]


@dataclass(frozen=True)
class SVDResult:
    """A ≈ U diag(sigma) Vᵀ with orthonormal columns in U and V."""

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.sigma.size)

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.sigma) @ self.V.T


def _orthonormal(block: np.ndarray) -> np.ndarray:
    q, _ = np.linalg.qr(block, mode="reduced")
    return q


def truncated_svd(
    matrix: Matrix,
    d: int,
    *,
    oversample: int = 10,
    power_iters: int = 2,
    seed: int = 0,
) -> SVDResult:
    """Randomized range finder with power iterations, then an exact SVD of the projected block."""

    n, m = matrix.shape
    if not 1 <= d <= min(n, m):
        raise ParameterError(f"d must lie in [1, {min(n, m)}]; got {d}.")
    if oversample < 0 or power_iters < 0:
        raise ParameterError("oversample and power_iters must be >= 0.")
    width = min(d + oversample, min(n, m))
    rng = make_rng(seed, "svd")
    omega = rng.standard_normal((m, width))
    q = _orthonormal(np.asarray(matrix @ omega))
    for _ in range(power_iters):
        z = _orthonormal(np.asarray(matrix.T @ q))
        q = _orthonormal(np.asarray(matrix @ z))
    projected = np.asarray((matrix.T @ q).T)
    u_small, sigma, vt = np.linalg.svd(projected, full_matrices=False)
    U = q @ u_small[:, :d]
    logger.info("truncated SVD: %dx%d, d=%d, top sigma %.6g", n, m, d, sigma[0] if sigma.size else 0.0)
    return SVDResult(U=U, sigma=sigma[:d].copy(), V=vt[:d].T.copy())
