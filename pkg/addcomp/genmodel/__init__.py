"""Pitman-Yor generative models and synthetic co-occurrence tables."""

from .crp import CRPState, crp_diagnostic, sample_pitman_yor
from .diagnostics import DiagnosticSeries, ZipfDiagnostic, zipf_diagnostic
from .emitter import emit_planted_corpus, planted_pair_tokens, render_corpus
from .mhpy import MHPYRun, MHPYState, sample_mhpy, step_probabilities
from .params import MHPYParams, PYParams
from .rng import make_rng
from .synth import base_cdf, sample_mhpy_counts, shared_base, synth_cooc

__all__ = [
    "CRPState",
    "DiagnosticSeries",
    "MHPYParams",
    "MHPYRun",
    "MHPYState",
    "PYParams",
    "ZipfDiagnostic",
    "base_cdf",
    "crp_diagnostic",
    "emit_planted_corpus",
    "make_rng",
    "planted_pair_tokens",
    "render_corpus",
    "sample_mhpy_counts",
    "sample_mhpy",
    "sample_pitman_yor",
    "shared_base",
    "step_probabilities",
    "synth_cooc",
    "zipf_diagnostic",
]
