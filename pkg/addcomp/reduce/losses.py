from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import expit

from ..errors import DomainError, ParameterError

LOSS_KINDS = ("l2", "glove", "sgns")

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class LossSpec:
    """Entry loss between a model value v and a target value w.

    ``glove`` weights the squared error by f(C^t_i) = min((C^t_i / x_max)^exponent, 1).
    ``sgns`` is C(t) times the Bregman divergence of
    φ(x) = (p^t_i + k p^noise_i) ln(exp(x) + k p^noise_i) in coordinates shifted by ln(k p^noise_i).
    """

    kind: str = "l2"
    x_max: float = 10.0
    exponent: float = 0.75
    k: float = 2.0

    def __post_init__(self) -> None:
        if self.kind not in LOSS_KINDS:
            raise ParameterError(f"loss kind must be one of {', '.join(LOSS_KINDS)}; got {self.kind!r}.")
        if self.x_max <= 0:
            raise ParameterError("x_max must be positive.")
        if self.k < 1:
            raise ParameterError("k must be >= 1.")


def glove_weight(count: ArrayLike, x_max: float = 10.0, exponent: float = 0.75) -> ArrayLike:
    return np.minimum(np.power(np.asarray(count, dtype=np.float64) / x_max, exponent), 1.0)


def _softplus(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def _check(v: np.ndarray, w: np.ndarray, spec: LossSpec) -> None:
    if not np.all(np.isfinite(v)):
        raise DomainError("Loss arguments must be finite.")
    # The SGNS optimum of an unseen context entry sits at w = -inf.
    bad_w = ~np.isfinite(w) if spec.kind != "sgns" else (np.isnan(w) | (w == np.inf))
    if np.any(bad_w):
        raise DomainError("Loss arguments must be finite.")


def _sgns_inputs(
    spec: LossSpec,
    p_target: Optional[ArrayLike],
    noise: Optional[ArrayLike],
    occurrences: Optional[ArrayLike],
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if p_target is None or noise is None or occurrences is None:
        raise ParameterError("The sgns loss needs p_target, noise and occurrences.")
    p_target = np.asarray(p_target, dtype=np.float64)
    noise = np.asarray(noise, dtype=np.float64)
    occurrences = np.asarray(occurrences, dtype=np.float64)
    if np.any(noise <= 0) or np.any(p_target < 0):
        raise DomainError("Noise probabilities must be positive and target probabilities nonnegative.")
    return p_target, noise, occurrences


def _finish(value: np.ndarray, scalar: bool) -> ArrayLike:
    return float(value) if scalar else value


def loss_eval(
    spec: LossSpec,
    v: ArrayLike,
    w: ArrayLike,
    *,
    count: Optional[ArrayLike] = None,
    p_target: Optional[ArrayLike] = None,
    noise: Optional[ArrayLike] = None,
    occurrences: Optional[ArrayLike] = None,
) -> ArrayLike:
    """Loss of model value ``v`` against target ``w``; arrays broadcast entrywise."""

    scalar = np.ndim(v) == 0 and np.ndim(w) == 0
    v = np.asarray(v, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    _check(v, w, spec)
    if spec.kind == "l2":
        return _finish((v - w) ** 2, scalar)
    if spec.kind == "glove":
        if count is None:
            raise ParameterError("The glove loss needs the co-occurrence count.")
        return _finish(glove_weight(count, spec.x_max, spec.exponent) * (v - w) ** 2, scalar)
    p_target, noise, occurrences = _sgns_inputs(spec, p_target, noise, occurrences)
    scale = occurrences * (p_target + spec.k * noise)
    finite = np.isfinite(w)
    safe_w = np.where(finite, w, 0.0)
    linear = np.where(finite, expit(safe_w) * (v - safe_w), 0.0)
    divergence = _softplus(v) - np.where(finite, _softplus(safe_w), 0.0) - linear
    return _finish(scale * np.maximum(divergence, 0.0), scalar and np.ndim(scale) == 0)


def loss_grad(
    spec: LossSpec,
    v: ArrayLike,
    w: ArrayLike,
    *,
    count: Optional[ArrayLike] = None,
    p_target: Optional[ArrayLike] = None,
    noise: Optional[ArrayLike] = None,
    occurrences: Optional[ArrayLike] = None,
) -> ArrayLike:
    """Derivative of :func:`loss_eval` with respect to ``v``."""

    scalar = np.ndim(v) == 0 and np.ndim(w) == 0
    v = np.asarray(v, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    _check(v, w, spec)
    if spec.kind == "l2":
        return _finish(2.0 * (v - w), scalar)
    if spec.kind == "glove":
        if count is None:
            raise ParameterError("The glove loss needs the co-occurrence count.")
        return _finish(2.0 * glove_weight(count, spec.x_max, spec.exponent) * (v - w), scalar)
    p_target, noise, occurrences = _sgns_inputs(spec, p_target, noise, occurrences)
    scale = occurrences * (p_target + spec.k * noise)
    return _finish(scale * (expit(v) - expit(w)), scalar and np.ndim(scale) == 0)


def sgns_objective(x: ArrayLike, p_target: float, noise: float, k: float, occurrences: float) -> ArrayLike:
    """Expected negative-sampling log-likelihood of one (target, context) cell at logit ``x``."""

    x = np.asarray(x, dtype=np.float64)
    value = occurrences * (p_target * -_softplus(-x) + k * noise * -_softplus(x))
    return float(value) if value.ndim == 0 else value


def sgns_optimum(p_target: float, noise: float, k: float) -> float:
    """w = ln(p^t_i / (k p^noise_i)), the shifted PMI."""

    if p_target == 0:
        return float("-inf")
    return float(np.log(p_target / (k * noise)))


def exp_bregman(p: ArrayLike, q: ArrayLike) -> ArrayLike:
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    value = np.exp(p) - np.exp(q) - np.exp(q) * (p - q)
    return float(value) if value.ndim == 0 else value


def sgns_limit_check(
    spec: LossSpec,
    v: float,
    w: float,
    k_list: Sequence[float],
    *,
    p_target: float,
    noise: float,
) -> List[Tuple[float, float]]:
    """Gap between the k-dependent divergence and the exp-Bregman divergence.

    ``v`` and ``w`` are the shifted coordinates P and Q; the divergence of
    φ_k(x) = (p^t + k p^noise) ln(e^x + k p^noise) is compared with
    e^P - e^Q - e^Q (P - Q) for each k.
    """

    if any(b <= a for a, b in zip(k_list, k_list[1:])):
        raise ParameterError("k_list must be increasing.")
    target = exp_bregman(v, w)
    gaps: List[Tuple[float, float]] = []
    for k in k_list:
        shift = np.log(k * noise)
        divergence = loss_eval(
            LossSpec("sgns", x_max=spec.x_max, exponent=spec.exponent, k=k),
            v - shift,
            w - shift,
            p_target=p_target,
            noise=noise,
            occurrences=1.0,
        )
        gaps.append((float(k), abs(divergence - target)))
    return gaps


def sgns_asymmetry(
    spec: LossSpec,
    w: float,
    deltas: Sequence[float],
    *,
    p_target: float,
    noise: float,
    occurrences: float = 1.0,
) -> List[Tuple[float, float, float]]:
    """(δ, loss(w+δ), loss(w-δ)) for every δ."""

    rows = []
    for delta in deltas:
        upper = loss_eval(spec, w + delta, w, p_target=p_target, noise=noise, occurrences=occurrences)
        lower = loss_eval(spec, w - delta, w, p_target=p_target, noise=noise, occurrences=occurrences)
        rows.append((float(delta), float(upper), float(lower)))
    return rows
