from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from addcomp.corpus import ContextConfig, TargetKey, TargetKind, Vocabulary, table_from_arrays
from addcomp.errors import DomainError, NormalizationError
from addcomp.genmodel import MHPYParams, PYParams, synth_cooc
from addcomp.vectors import (
    FSpec,
    build_space,
    f_transform,
    norm_grid,
    norm_statistics,
    read_vectors,
    write_vectors,
)


def _table():
    rng = np.random.default_rng(0)
    vocab = Vocabulary.placeholder([50, 40, 30, 20, 10, 5])
    rows = {TargetKey.unigram(i): rng.integers(1, 20, size=6) for i in range(4)}
    rows[TargetKey.unordered(0, 1)] = rng.integers(0, 10, size=6)
    rows[TargetKey.unordered(2, 3)] = rng.integers(0, 10, size=6)
    rows[TargetKey.unordered(1, 2)] = rng.integers(0, 10, size=6)
    return table_from_arrays(vocab, ContextConfig(), rows)


def test_f_transform_family() -> None:
    assert f_transform(np.e, 0.0) == pytest.approx(1.0)
    assert f_transform(4.0, 0.5) == pytest.approx(4.0)
    np.testing.assert_allclose(f_transform(np.array([1.0, 8.0]), 1.0 / 3.0), [3.0, 6.0])
    with pytest.raises(DomainError):
        f_transform(np.array([0.0, 1.0]), 0.5)
    assert FSpec(0.5).derivative(4.0) == pytest.approx(0.5)


def test_phrase_vectors_are_centred_with_unit_mean_norm() -> None:
    table = _table()
    for lam in (0.0, 0.5, 1.0):
        space = build_space(table, lam)
        phrases = space.matrix(table.keys(TargetKind.UNORDERED))
        np.testing.assert_allclose(phrases.mean(axis=0), 0.0, atol=1e-12)
        assert np.linalg.norm(phrases, axis=1).mean() == pytest.approx(1.0)


def test_computed_offsets_centre_each_vector() -> None:
    space = build_space(_table(), 0.0)
    key = TargetKey.unigram(2)
    vector = space.natural_vector(key)
    np.testing.assert_allclose(vector.mean(), -space.c * space.b.mean(), atol=1e-12)


def test_zero_offsets_mode() -> None:
    space = build_space(_table(), 0.5, offsets="zero")
    assert set(space.a.values()) == {0.0}
    assert space.offsets == "zero"


def test_single_phrase_cannot_be_normalized() -> None:
    table = _table()
    with pytest.raises(NormalizationError):
        build_space(table, 0.0, phrase_set=[TargetKey.unordered(0, 1)])


def test_matrix_matches_single_vectors() -> None:
    table = _table()
    space = build_space(table, 0.5)
    keys = table.keys()
    matrix = space.matrix(keys, batch_size=2)
    for row, key in zip(matrix, keys):
        np.testing.assert_allclose(row, space.natural_vector(key))


def test_norm_statistics_and_grid() -> None:
    table = _table()
    space = build_space(table, 0.0)
    stats = norm_statistics(space, TargetKind.UNIGRAM, bins=4)
    assert stats.count == 4
    assert sum(count for _, _, count in stats.histogram_rows()) == 4
    grid = norm_grid(table, [0.0, 1.0], [TargetKind.UNIGRAM, TargetKind.UNORDERED])
    assert [(lam, kind) for lam, kind, _, _ in grid] == [(0.0, "u"), (0.0, "ub"), (1.0, "u"), (1.0, "ub")]
    assert grid[1][2] == pytest.approx(1.0)


def test_vector_file_keeps_keys(tmp_path: Path) -> None:
    table = _table()
    space = build_space(table, 1.0)
    path = write_vectors(space, tmp_path / "vectors.tsv", config_hash="abc", seed=3)
    assert path.read_text(encoding="utf-8").startswith("# config_hash=abc seed=3\n")
    keys, matrix = read_vectors(path)
    assert keys == table.keys()
    np.testing.assert_allclose(matrix, space.matrix(keys), rtol=1e-8)


def test_phrase_norms_concentrate_at_log_scale_only() -> None:
    table = synth_cooc(
        MHPYParams(0.95, 1.0, 0.95, 1.0),
        PYParams(0.95, 1.0),
        n_targets=4000,
        tokens_per_target=1000,
        phrase_fraction=1.0,
        seed=0,
        n_context=5000,
    )
    assert len(table.keys(TargetKind.UNORDERED)) == 2000
    grid = norm_grid(table, [0.0, 1.0], [TargetKind.UNORDERED])
    (_, _, _, std_log), (_, _, _, std_linear) = grid
    assert std_log <= 0.15
    assert std_linear / std_log >= 3.0
