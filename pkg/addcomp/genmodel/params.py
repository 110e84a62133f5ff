from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParameterError


@dataclass(frozen=True)
class PYParams:
    """Pitman-Yor discount ``alpha`` in (0, 1) and concentration ``theta`` > -alpha."""

    alpha: float
    theta: float

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise ParameterError(f"Pitman-Yor alpha must lie in (0, 1), got {self.alpha}.")
        if not self.theta > -self.alpha:
            raise ParameterError(f"Pitman-Yor theta must exceed -alpha, got {self.theta}.")

    @classmethod
    def parse(cls, text: str) -> "PYParams":
        """Parse ``"alpha,theta"`` as given on the command line."""

        try:
            alpha, theta = (float(part) for part in text.split(","))
        except ValueError:
            raise ParameterError(f"Expected 'alpha,theta', got {text!r}.") from None
        return cls(alpha, theta)


@dataclass(frozen=True)
class MHPYParams:
    """Word level ``(alpha2, theta2)`` and reference level ``(alpha1, theta1)`` parameters."""

    alpha1: float
    theta1: float
    alpha2: float
    theta2: float

    def __post_init__(self) -> None:
        PYParams(self.alpha1, self.theta1)
        PYParams(self.alpha2, self.theta2)

    @property
    def reference_level(self) -> PYParams:
        return PYParams(self.alpha1, self.theta1)

    @property
    def word_level(self) -> PYParams:
        return PYParams(self.alpha2, self.theta2)
