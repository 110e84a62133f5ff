"""Correlation, power-law and chi-square checks on co-occurrence statistics."""

from .chisq import CATEGORY_EDGES, ChisqResult, categorize, chisq_index1_test, model_probabilities
from .correlation import CorrelationResult, spearman_rho
from .independence import (
    PAIR_KINDS,
    IndependenceReport,
    context_ratios,
    independence_report,
    probability_ratios,
    ranked_ratio_profile,
    ratio_categories,
)
from .powerlaw import PowerLawFit, fit_power_law

__all__ = [
    "CATEGORY_EDGES",
    "ChisqResult",
    "CorrelationResult",
    "IndependenceReport",
    "PAIR_KINDS",
    "PowerLawFit",
    "categorize",
    "chisq_index1_test",
    "context_ratios",
    "fit_power_law",
    "independence_report",
    "model_probabilities",
    "probability_ratios",
    "ranked_ratio_profile",
    "ratio_categories",
    "spearman_rho",
]
