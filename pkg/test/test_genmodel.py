from __future__ import annotations

import numpy as np
import pytest

from addcomp.corpus import TargetKey, TargetKind, partition_counts
from addcomp.errors import ParameterError
from addcomp.genmodel import (
    MHPYParams,
    MHPYRun,
    PYParams,
    base_cdf,
    crp_diagnostic,
    emit_planted_corpus,
    make_rng,
    sample_mhpy,
    sample_mhpy_counts,
    sample_pitman_yor,
    step_probabilities,
    synth_cooc,
    zipf_diagnostic,
)
from addcomp.genmodel.rng import UniformStream
from addcomp.stats import fit_power_law


def test_py_params_validate_ranges() -> None:
    with pytest.raises(ParameterError):
        PYParams(1.0, 1.0)
    with pytest.raises(ParameterError):
        PYParams(0.5, -0.5)
    assert PYParams.parse("0.8,2") == PYParams(0.8, 2.0)
    with pytest.raises(ParameterError):
        PYParams.parse("0.8")


def test_streams_are_independent_of_opening_order() -> None:
    first = make_rng(7, "synth", 3).random(4)
    make_rng(7, "other").random(10)
    again = make_rng(7, "synth", 3).random(4)
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, make_rng(7, "synth", 4).random(4))


def test_pitman_yor_run_is_reproducible() -> None:
    params = PYParams(0.5, 1.0)
    one = sample_pitman_yor(params, 5000, seed=3)
    two = sample_pitman_yor(params, 5000, seed=3)
    np.testing.assert_array_equal(one.counts, two.counts)
    assert one.total == 5000
    assert one.series.label == "C/N^(1/alpha)"


def test_pitman_yor_distinct_words_grow_like_a_power() -> None:
    params = PYParams(0.5, 1.0)
    small = sample_pitman_yor(params, 2_000, seed=11)
    large = sample_pitman_yor(params, 200_000, seed=11)
    # N grows like C^alpha: a 100x longer run has about 10x more words.
    growth = large.distinct / small.distinct
    assert 5.0 < growth < 20.0


def test_mhpy_step_probabilities_sum_to_one() -> None:
    state = sample_mhpy(MHPYParams(0.8, 1.0, 0.6, 2.0), 5000, seed=5)
    new_word, new_ref, copy = step_probabilities(state)
    total = new_word + float(new_ref.sum()) + float(copy.sum())
    assert total == pytest.approx(1.0, abs=1e-9)
    assert state.total == 5000
    assert state.normalizer == pytest.approx(state.recompute_normalizer(), rel=1e-9)


def test_mhpy_reference_counts_match_word_counts() -> None:
    state = sample_mhpy(MHPYParams(0.8, 1.0, 0.6, 2.0), 3000, seed=9)
    per_word = np.bincount(state.ref_word, weights=state.ref_counts, minlength=state.n_words)
    np.testing.assert_array_equal(per_word.astype(np.int64), state.word_counts)
    np.testing.assert_array_equal(np.bincount(state.ref_word, minlength=state.n_words), state.word_refs)


def test_synth_cooc_plants_exact_partitions() -> None:
    table = synth_cooc(
        MHPYParams(0.5, 1.0, 0.5, 1.0),
        PYParams(0.9, 1.0),
        n_targets=8,
        tokens_per_target=100,
        phrase_fraction=1.0,
        seed=1,
        n_context=50,
        planted_pi=0.5,
    )
    phrases = table.keys(TargetKind.UNORDERED)
    assert len(phrases) == 4
    for key in phrases:
        s, t = key.words
        whole = table.dense_counts(TargetKey.unigram(t))
        parts = table.dense_counts(TargetKey.exclusion(t, s)) + table.dense_counts(TargetKey.adjacent(t, s))
        np.testing.assert_array_equal(parts, whole)
        assert partition_counts(table, s, t).pi == pytest.approx(0.5)


def test_synth_cooc_is_deterministic() -> None:
    kwargs = dict(n_targets=6, tokens_per_target=50, phrase_fraction=0.5, seed=4, n_context=40)
    one = synth_cooc(MHPYParams(0.5, 1.0, 0.5, 1.0), PYParams(0.9, 1.0), **kwargs)
    two = synth_cooc(MHPYParams(0.5, 1.0, 0.5, 1.0), PYParams(0.9, 1.0), **kwargs)
    assert one.equals(two)


def test_synth_cooc_rejects_more_targets_than_contexts() -> None:
    with pytest.raises(ParameterError):
        synth_cooc(MHPYParams(0.5, 1.0, 0.5, 1.0), PYParams(0.9, 1.0), 20, 10, 1.0, seed=0, n_context=10)


def test_planted_corpus_contains_forward_and_reversed_pairs() -> None:
    sentences = emit_planted_corpus(2, 20, 0.25, seed=0)
    joined = [" ".join(sentence) for sentence in sentences]
    assert sum(" s0 t0 " in f" {line} " for line in joined) == 20
    assert sum(" t0 s0 " in f" {line} " for line in joined) == 5


def test_zipf_diagnostic_of_a_harmonic_lexicon() -> None:
    counts = np.round(1_000_000 / np.arange(1, 2001)).astype(np.int64)
    diagnostic = zipf_diagnostic(counts)
    assert diagnostic.slope == pytest.approx(-1.0, abs=0.01)
    assert diagnostic.zipfian


def _base_cdf(n: int = 30) -> np.ndarray:
    return base_cdf(np.round(1000.0 / np.arange(1, n + 1)))


def test_mhpy_run_over_a_base_maps_each_context_to_one_word() -> None:
    cdf = _base_cdf()
    run = MHPYRun(MHPYParams(0.8, 1.0, 0.6, 2.0), UniformStream(make_rng(2, "run")), base_cdf=cdf).advance(3000)
    state = run.state(2)
    assert len(set(run.word_context)) == state.n_words
    assert max(run.word_context) < cdf.size
    assert int(state.word_refs.sum()) == state.n_refs
    assert state.total == 3000
    assert state.normalizer == pytest.approx(state.recompute_normalizer(), rel=1e-9)


def test_mhpy_counts_cover_the_token_budget_within_the_base() -> None:
    cdf = _base_cdf(50)
    counts = sample_mhpy_counts(cdf, MHPYParams(0.5, 1.0, 0.5, 1.0), 500, UniformStream(make_rng(3, "row")))
    assert counts.shape == (50,)
    assert int(counts.sum()) == 500
    assert counts.min() >= 0


def test_forked_run_continues_without_touching_the_parent() -> None:
    cdf = _base_cdf(40)
    params = MHPYParams(0.5, 1.0, 0.5, 1.0)
    parent = MHPYRun(params, UniformStream(make_rng(4, "phrase")), base_cdf=cdf).advance(200)
    before = parent.context_counts(40)
    refs_before = list(parent.ref_counts)
    twin = parent.fork(UniformStream(make_rng(4, "exclusion"))).advance(300)
    np.testing.assert_array_equal(parent.context_counts(40), before)
    assert parent.ref_counts == refs_before
    after = twin.context_counts(40)
    assert int(after.sum()) == 500
    assert np.all(after >= before)


def test_synth_exclusion_rows_are_nonnegative_continuations() -> None:
    table = synth_cooc(
        MHPYParams(0.5, 1.0, 0.5, 1.0),
        PYParams(0.9, 1.0),
        n_targets=10,
        tokens_per_target=80,
        phrase_fraction=1.0,
        seed=6,
        n_context=60,
    )
    for key in table.keys(TargetKind.UNORDERED):
        s, t = key.words
        for word, partner in ((t, s), (s, t)):
            exclusion = table.dense_counts(TargetKey.exclusion(word, partner))
            assert exclusion.min() >= 0
        np.testing.assert_array_equal(table.dense_counts(TargetKey.adjacent(t, s)), table.dense_counts(key))


def test_mhpy_tail_fit_at_near_unit_discounts() -> None:
    state = sample_mhpy(MHPYParams(0.95, 1.0, 0.95, 1.0), 100_000, seed=0)
    fit = fit_power_law(state.tail_ratios())
    assert np.isfinite(fit.alpha)
    assert fit.alpha > 1.2
    assert fit.n_tail >= 2


def test_pitman_yor_near_unit_discount_is_zipfian_and_settles() -> None:
    state = sample_pitman_yor(PYParams(0.95, 1.0), 1_000_000, seed=0)
    assert -1.15 <= zipf_diagnostic(state).slope <= -0.90
    assert crp_diagnostic(state).relative_change(10.0) < 0.1
