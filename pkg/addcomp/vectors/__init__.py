"""Natural vectors built from co-occurrence probabilities."""

from .export import read_vectors, render_vectors, write_vectors
from .space import NormStatistics, VectorSpace, build_space, default_phrase_keys, norm_grid, norm_statistics
from .transform import FSpec, f_transform

__all__ = [
    "FSpec",
    "NormStatistics",
    "VectorSpace",
    "build_space",
    "default_phrase_keys",
    "f_transform",
    "norm_grid",
    "norm_statistics",
    "read_vectors",
    "render_vectors",
    "write_vectors",
]
