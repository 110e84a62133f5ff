"""Laboratory for the additive composition of distributional word vectors."""

from .cli import cli, run

__all__ = ["cli", "run"]
