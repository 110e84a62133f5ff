"""Additive composition, its bias and the collocation bound."""

from .additive import bias, bias_bound, collocation_pi, compose_additive, constituent_keys, phrase_key
from .neighbors import nearest_neighbors
from .report import BiasRecord, BiasReport, bias_report, cosine, report_phrases

__all__ = [
    "BiasRecord",
    "BiasReport",
    "bias",
    "bias_bound",
    "bias_report",
    "collocation_pi",
    "compose_additive",
    "constituent_keys",
    "cosine",
    "nearest_neighbors",
    "phrase_key",
    "report_phrases",
]
