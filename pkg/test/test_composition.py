from __future__ import annotations

import math

import numpy as np
import pytest

from addcomp.composition import (
    bias,
    bias_bound,
    bias_report,
    collocation_pi,
    compose_additive,
    nearest_neighbors,
    report_phrases,
)
from addcomp.corpus import ContextConfig, TargetKey, Vocabulary, table_from_arrays
from addcomp.errors import DomainError, ParameterError, ReportError
from addcomp.genmodel import MHPYParams, PYParams, synth_cooc
from addcomp.vectors import build_space


def _synthetic(planted_pi=None):
    return synth_cooc(
        MHPYParams(0.5, 1.0, 0.5, 1.0),
        PYParams(0.9, 1.0),
        n_targets=20,
        tokens_per_target=400,
        phrase_fraction=1.0,
        seed=2,
        n_context=60,
        max_pi=0.6,
        planted_pi=planted_pi,
    )


def test_bias_bound_values() -> None:
    assert bias_bound(0.0, 0.0) == 0.0
    assert bias_bound(1.0, 1.0) == pytest.approx(math.sqrt(1.5))
    assert bias_bound(0.5, 0.5) == pytest.approx(math.sqrt(0.5 * 0.75))
    with pytest.raises(DomainError):
        bias_bound(1.2, 0.0)


def test_collocation_pi_from_counts() -> None:
    vocab = Vocabulary.placeholder([10, 10, 10])
    rows = {
        TargetKey.unigram(0): np.array([0, 4, 6]),
        TargetKey.unigram(1): np.array([5, 0, 5]),
        TargetKey.unordered(0, 1): np.array([1, 1, 2]),
    }
    occurrences = {TargetKey.unigram(0): 8, TargetKey.unigram(1): 4, TargetKey.unordered(0, 1): 2}
    table = table_from_arrays(vocab, ContextConfig(), rows, occurrences)
    pi1, pi2 = collocation_pi(table, 0, 1)
    assert pi1 == pytest.approx(1.0 - 2 / 4)
    assert pi2 == pytest.approx(1.0 - 2 / 8)
    with pytest.raises(ParameterError):
        collocation_pi(table, 0, 1, mode="nearfar")


def test_planted_phrases_report_their_collocation_ratios() -> None:
    table = _synthetic()
    space = build_space(table, 0.0)
    report = bias_report(space, table, report_phrases(table))
    assert report.summary()["count"] == 10
    for record in report.records:
        assert 0.0 <= record.pi1 <= 0.6 + 1e-9
        assert record.bound == pytest.approx(bias_bound(record.pi1, record.pi2))
    loose = bias_report(space, table, report_phrases(table), epsilon=0.05).summary()
    assert loose["within_fraction"] + loose["violation_fraction"] == pytest.approx(1.0)
    assert loose["within_fraction"] >= report.summary()["within_fraction"]


def test_phrase_without_exclusion_counts_has_no_bias() -> None:
    table = _synthetic(planted_pi=0.0)
    space = build_space(table, 0.0)
    report = bias_report(space, table, report_phrases(table))
    assert all(record.bias == pytest.approx(0.0, abs=1e-12) for record in report.records)
    summary = report.summary()
    assert summary["violation_fraction"] == 0.0
    assert summary["within_fraction"] == 1.0


def test_bias_grows_with_the_exclusion_mass() -> None:
    means = []
    for pi in (0.05, 0.5):
        table = _synthetic(planted_pi=pi)
        space = build_space(table, 0.0)
        means.append(np.mean([bias(space, s, t) for s, t in report_phrases(table)]))
    assert means[0] < means[1]
    s, t = report_phrases(table)[0]
    assert compose_additive(space, s, t).shape == (space.dimension,)


def test_bias_report_needs_phrases() -> None:
    table = _synthetic()
    space = build_space(table, 0.0)
    with pytest.raises(ReportError, match="no phrases"):
        bias_report(space, table, [])


def test_nearest_neighbors_orders_by_cosine_then_label() -> None:
    labels = ["b", "a", "c", "z"]
    vectors = np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    ranked = nearest_neighbors(labels, vectors, np.array([2.0, 0.1]), 3)
    assert [label for label, _ in ranked] == ["a", "b", "c"]
    assert nearest_neighbors(labels, vectors, np.array([1.0, 0.0]), 1, exclude=["a"])[0][0] == "b"
    with pytest.raises(DomainError):
        nearest_neighbors(labels, vectors, np.zeros(2), 1)
