from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import DomainError

ArrayLike = Union[float, np.ndarray]


def f_transform(x: ArrayLike, lam: float) -> ArrayLike:
    """F(x) = x^λ/λ for λ != 0 and ln x for λ = 0; accepts scalars or arrays."""

    values = np.asarray(x, dtype=np.float64)
    if values.size and not np.all(values > 0):
        raise DomainError(f"F is defined on positive reals only (lambda={lam}).")
    if lam == 0:
        result = np.log(values)
    else:
        result = np.power(values, lam) / lam
    if np.ndim(x) == 0:
        return float(result)
    return result


@dataclass(frozen=True)
class FSpec:
    lam: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.lam):
            raise DomainError("lambda must be finite.")

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return f_transform(x, self.lam)

    def derivative(self, x: ArrayLike) -> ArrayLike:
        values = np.asarray(x, dtype=np.float64)
        if values.size and not np.all(values > 0):
            raise DomainError("F' is defined on positive reals only.")
        result = np.power(values, self.lam - 1.0)
        return float(result) if np.ndim(x) == 0 else result

    @property
    def label(self) -> str:
        return f"lambda={self.lam:g}"
