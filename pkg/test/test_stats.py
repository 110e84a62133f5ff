from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate
from scipy import stats as scipy_stats

from addcomp.errors import ParameterError, ReportError, StatisticsError
from addcomp.genmodel import MHPYParams, PYParams, synth_cooc
from addcomp.stats import (
    categorize,
    chisq_index1_test,
    context_ratios,
    fit_power_law,
    independence_report,
    model_probabilities,
    ratio_categories,
    spearman_rho,
)


@pytest.mark.parametrize(
    ("counts", "expected_p"),
    [
        ([16167, 29, 14, 0, 0], 0.00099),
        ([16173, 29, 6, 2, 0], 0.0003),
        ([16169, 28, 9, 3, 1], 0.0059),
        ([15859, 194, 93, 39, 25], 0.013),
    ],
)
def test_chisq_reference_categories(counts, expected_p) -> None:
    result = chisq_index1_test(counts)
    assert result.p_value == pytest.approx(expected_p, rel=0.15)
    assert result.dof == 3
    assert 1.0 / 16.0 <= result.m_star <= 0.5


def test_chisq_rejects_empty_tail() -> None:
    result = chisq_index1_test([16210, 0, 0, 0, 0])
    assert result.p_value < 1e-4
    assert not result.passed
    assert result.m_star == pytest.approx(1.0 / 16.0)


def test_chisq_recovers_model_counts() -> None:
    result = chisq_index1_test([504, 4, 2, 1, 1])
    assert result.m_star == pytest.approx(0.25, abs=1e-3)
    assert result.chi2 == pytest.approx(0.0, abs=1e-6)
    assert result.passed
    assert model_probabilities(0.25).sum() == pytest.approx(1.0)


def test_chisq_validates_counts() -> None:
    with pytest.raises(ParameterError):
        chisq_index1_test([1, 2, 3])
    with pytest.raises(ParameterError):
        chisq_index1_test([10, 1, 1, 1, 1])
    with pytest.raises(ParameterError):
        chisq_index1_test([100, -1, 1, 1, 1])


def test_categorize_uses_half_open_bins() -> None:
    ratios = np.array([1.0, 15.9, 16.0, 31.9, 32.0, 64.0, 127.9, 128.0, 1000.0])
    np.testing.assert_array_equal(categorize(ratios), [2, 2, 1, 2, 2])


def test_power_law_on_two_points() -> None:
    fit = fit_power_law([1.0, math.e], m=1.0)
    assert fit.alpha == pytest.approx(2.0)
    assert fit.density_exponent == pytest.approx(3.0)
    assert fit.n_tail == 2


def test_power_law_recovers_a_pareto_index() -> None:
    rng = np.random.default_rng(0)
    sample = 2.0 * rng.random(20_000) ** (-1.0 / 1.5)
    assert fit_power_law(sample, m=2.0).alpha == pytest.approx(1.5, abs=0.05)
    scanned = fit_power_law(sample, max_candidates=200)
    assert scanned.alpha == pytest.approx(1.5, abs=0.2)
    assert scanned.m >= 2.0


def test_power_law_needs_positive_values() -> None:
    with pytest.raises(ParameterError):
        fit_power_law([1.0, 2.0, 0.0, 3.0] * 5)
    with pytest.raises(ParameterError):
        fit_power_law([1.0, 2.0])


def test_spearman_matches_scipy() -> None:
    rng = np.random.default_rng(4)
    x = rng.normal(size=40)
    y = x + rng.normal(size=40)
    y[3] = y[7]
    ours = spearman_rho(x, y)
    reference = scipy_stats.spearmanr(x, y)
    assert ours.rho == pytest.approx(reference[0])
    assert ours.p_value == pytest.approx(reference[1], rel=1e-6)


def test_spearman_edge_cases() -> None:
    assert spearman_rho([1, 2, 3, 4], [10, 20, 30, 40]).rho == pytest.approx(1.0)
    assert spearman_rho([1, 2, 3, 4], [4, 3, 2, 1]).p_value == 0.0
    with pytest.raises(StatisticsError):
        spearman_rho([1, 2, 3], [5, 5, 5])
    with pytest.raises(ParameterError):
        spearman_rho([1, 2], [1, 2])


def _synthetic():
    return synth_cooc(
        MHPYParams(0.5, 1.0, 0.5, 1.0),
        PYParams(0.9, 1.0),
        n_targets=20,
        tokens_per_target=300,
        phrase_fraction=1.0,
        seed=5,
        n_context=60,
    )


def test_context_ratios_cover_the_word_targets() -> None:
    table = _synthetic()
    ratios = context_ratios(table, 0)
    assert ratios.shape == (20,)
    assert np.all(ratios >= 0.0)
    assert ratio_categories(table, 0).sum() == 20
    with pytest.raises(ParameterError):
        context_ratios(table, 10_000)


@pytest.mark.parametrize("pair_kind", ["unigram", "phrase", "exclusion", "exclusion-phrase"])
def test_independence_report_histogram(pair_kind) -> None:
    report = independence_report(_synthetic(), pair_kind, 30, seed=1)
    assert report.rhos.size + report.skipped == 30
    assert sum(count for _, _, count in report.rows()) == report.rhos.size
    assert np.all(np.abs(report.rhos) <= 1.0)
    assert report.summary()["pair_kind"] == pair_kind


def test_independence_report_validates_its_arguments() -> None:
    table = _synthetic()
    with pytest.raises(ParameterError):
        independence_report(table, "trigram", 10, seed=0)
    with pytest.raises(ParameterError):
        independence_report(table, "unigram", 0, seed=0)
    small = synth_cooc(MHPYParams(0.5, 1.0, 0.5, 1.0), PYParams(0.9, 1.0), 4, 50, 1.0, seed=0, n_context=30)
    with pytest.raises(ReportError):
        independence_report(small, "exclusion", 10, seed=0)


@pytest.mark.parametrize("seed", range(5))
def test_power_law_recovers_a_unit_index(seed: int) -> None:
    rng = np.random.default_rng(seed)
    sample = (1.0 - rng.random(100_000)) ** -1.0
    assert 0.98 <= fit_power_law(sample, m=1.0).alpha <= 1.02


def test_power_law_ks_on_exact_quantiles() -> None:
    n = 100_000
    quantiles = (1.0 - (np.arange(1, n + 1) - 0.5) / n) ** -1.0
    fit = fit_power_law(quantiles, m=1.0)
    assert fit.n_tail == n
    assert fit.ks <= 1.0 / fit.n_tail


def test_spearman_equals_pearson_of_average_ranks_with_ties() -> None:
    rng = np.random.default_rng(12)
    x = rng.integers(0, 20, size=1000)
    y = x + rng.integers(0, 10, size=1000)
    expected = np.corrcoef(scipy_stats.rankdata(x), scipy_stats.rankdata(y))[0, 1]
    assert abs(spearman_rho(x, y).rho - expected) < 1e-12


def test_chisq_p_value_matches_quadrature() -> None:
    result = chisq_index1_test([15859, 194, 93, 39, 25])
    tail, _ = integrate.quad(
        lambda x: math.sqrt(x) * math.exp(-x / 2.0) / math.sqrt(2.0 * math.pi), result.chi2, math.inf
    )
    assert abs(result.p_value - tail) < 1e-6


def test_spearman_p_value_matches_quadrature() -> None:
    rng = np.random.default_rng(8)
    x = rng.normal(size=25)
    y = 0.4 * x + rng.normal(size=25)
    result = spearman_rho(x, y)
    dof = result.n - 2
    log_norm = math.lgamma((dof + 1) / 2.0) - math.lgamma(dof / 2.0) - 0.5 * math.log(dof * math.pi)

    def density(t: float) -> float:
        return math.exp(log_norm - (dof + 1) / 2.0 * math.log1p(t * t / dof))

    tail, _ = integrate.quad(density, abs(result.t_statistic), math.inf)
    assert abs(result.p_value - 2.0 * tail) < 1e-6
