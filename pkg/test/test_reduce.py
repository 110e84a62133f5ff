from __future__ import annotations

import numpy as np
import pytest
from scipy import sparse

from addcomp.errors import DomainError, ParameterError
from addcomp.reduce import (
    EmbeddingSet,
    LossInputs,
    LossSpec,
    embed,
    exp_bregman,
    glove_weight,
    loss_eval,
    loss_grad,
    sgd_factorize,
    sgns_asymmetry,
    sgns_limit_check,
    sgns_objective,
    sgns_optimum,
    truncated_svd,
)


def _low_rank(n: int, m: int, spectrum) -> np.ndarray:
    rng = np.random.default_rng(1)
    q1, _ = np.linalg.qr(rng.normal(size=(n, len(spectrum))))
    q2, _ = np.linalg.qr(rng.normal(size=(m, len(spectrum))))
    return (q1 * np.asarray(spectrum, dtype=np.float64)) @ q2.T


def test_truncated_svd_matches_the_dense_decomposition() -> None:
    matrix = _low_rank(40, 25, [10.0, 8.0, 6.0, 4.0, 2.0, 1.0, 0.5, 0.25])
    result = truncated_svd(matrix, 5, seed=3)
    np.testing.assert_allclose(result.sigma, [10.0, 8.0, 6.0, 4.0, 2.0], rtol=1e-8)
    u, s, vt = np.linalg.svd(matrix, full_matrices=False)
    np.testing.assert_allclose(result.reconstruct(), (u[:, :5] * s[:5]) @ vt[:5], atol=1e-8)
    np.testing.assert_allclose(result.U.T @ result.U, np.eye(5), atol=1e-10)


def test_truncated_svd_accepts_sparse_input() -> None:
    matrix = _low_rank(30, 20, [3.0, 2.0, 1.0])
    dense = truncated_svd(matrix, 2, seed=0)
    sparse_result = truncated_svd(sparse.csr_matrix(matrix), 2, seed=0)
    np.testing.assert_allclose(sparse_result.sigma, dense.sigma, rtol=1e-10)


def test_truncated_svd_checks_the_rank() -> None:
    with pytest.raises(ParameterError):
        truncated_svd(np.ones((4, 3)), 4)
    with pytest.raises(ParameterError):
        truncated_svd(np.ones((4, 3)), 0)


def test_embed_splits_the_spectrum_between_factors() -> None:
    matrix = _low_rank(12, 9, [5.0, 3.0, 1.0])
    labels = [f"w{i}" for i in range(12)]
    embeddings, result = embed(matrix, 3, False, 0, labels)
    np.testing.assert_allclose(embeddings.vectors @ embeddings.context_factor.T, matrix, atol=1e-8)
    np.testing.assert_allclose(embeddings.sigma, result.sigma)
    normalized, _ = embed(matrix, 3, True, 0, labels)
    np.testing.assert_allclose(np.linalg.norm(normalized.vectors, axis=1), 1.0)
    assert normalized.lookup("w4").shape == (3,)


def test_normalize_drops_zero_vectors() -> None:
    embeddings = EmbeddingSet(labels=("a", "b"), vectors=np.array([[3.0, 4.0], [0.0, 0.0]]))
    normalized = embeddings.normalize()
    assert normalized.labels == ("a",)
    np.testing.assert_allclose(normalized.vectors, [[0.6, 0.8]])


def test_l2_factorizer_recovers_a_low_rank_matrix() -> None:
    matrix = _low_rank(30, 20, [6.0, 5.0, 4.0, 3.0])
    result = sgd_factorize(matrix, 4, LossSpec("l2"), epochs=2000, learning_rate=0.02, batch_size=64, seed=0)
    rmse = float(np.sqrt(np.mean((result.reconstruct() - matrix) ** 2)))
    assert rmse <= 1e-3
    assert result.losses[-1] < result.losses[0]
    assert len(result.log_rows()) == 2000


def test_factorizer_is_deterministic() -> None:
    matrix = _low_rank(10, 8, [2.0, 1.0])
    counts = np.full(matrix.shape, 20.0)
    spec = LossSpec("glove")
    one = sgd_factorize(matrix, 2, spec, epochs=20, seed=5, inputs=LossInputs(counts=counts))
    two = sgd_factorize(matrix, 2, spec, epochs=20, seed=5, inputs=LossInputs(counts=counts))
    np.testing.assert_array_equal(one.embeddings.vectors, two.embeddings.vectors)
    assert one.losses == two.losses


def test_factorizer_validates_arguments() -> None:
    with pytest.raises(ParameterError):
        sgd_factorize(np.ones((3, 3)), 4, LossSpec("l2"))
    with pytest.raises(ParameterError):
        sgd_factorize(np.ones((3, 3)), 2, LossSpec("l2"), learning_rate=0.0)
    with pytest.raises(ParameterError):
        LossSpec("hinge")


@pytest.mark.parametrize(
    ("spec", "side"),
    [
        (LossSpec("l2"), {}),
        (LossSpec("glove", x_max=10.0), {"count": np.array([2.0, 15.0, 7.0])}),
        (
            LossSpec("sgns", k=5.0),
            {"p_target": np.array([0.1, 0.3, 0.0]), "noise": np.array([0.2, 0.05, 0.4]), "occurrences": 3.0},
        ),
    ],
)
def test_loss_gradient_matches_finite_differences(spec, side) -> None:
    v = np.array([0.3, -1.2, 0.8])
    w = np.array([0.1, -0.4, 1.5])
    eps = 1e-6
    numeric = (loss_eval(spec, v + eps, w, **side) - loss_eval(spec, v - eps, w, **side)) / (2 * eps)
    np.testing.assert_allclose(loss_grad(spec, v, w, **side), numeric, rtol=1e-5, atol=1e-8)
    np.testing.assert_allclose(loss_eval(spec, w, w, **side), 0.0, atol=1e-12)


def test_loss_rejects_bad_arguments() -> None:
    with pytest.raises(DomainError):
        loss_eval(LossSpec("l2"), np.nan, 0.0)
    with pytest.raises(ParameterError):
        loss_eval(LossSpec("glove"), 1.0, 0.0)
    with pytest.raises(ParameterError):
        loss_eval(LossSpec("sgns"), 1.0, 0.0, p_target=0.1)


def test_sgns_accepts_an_unseen_context() -> None:
    spec = LossSpec("sgns", k=2.0)
    value = loss_eval(spec, 0.0, float("-inf"), p_target=0.0, noise=0.25, occurrences=4.0)
    assert value == pytest.approx(4.0 * 0.5 * np.log(2.0))
    assert sgns_optimum(0.0, 0.25, 2.0) == float("-inf")


def test_glove_weight_saturates() -> None:
    assert glove_weight(10.0) == pytest.approx(1.0)
    assert glove_weight(100.0) == pytest.approx(1.0)
    assert glove_weight(5.0) == pytest.approx(0.5**0.75)


def test_sgns_approaches_exp_bregman_as_k_grows() -> None:
    assert exp_bregman(0.5, -0.5) == pytest.approx(0.43566, abs=1e-5)
    gaps = sgns_limit_check(LossSpec("sgns"), 0.5, -0.5, [1, 10, 100, 1000], p_target=0.1, noise=0.5)
    assert [k for k, _ in gaps] == [1.0, 10.0, 100.0, 1000.0]
    for (_, gap), expected in zip(gaps, [0.366, 0.118, 0.0148, 0.00152]):
        assert gap == pytest.approx(expected, rel=0.03)
    values = [gap for _, gap in gaps]
    assert all(later <= earlier for earlier, later in zip(values, values[1:]))
    assert values[-1] <= 1e-2
    with pytest.raises(ParameterError):
        sgns_limit_check(LossSpec("sgns"), 0.5, -0.5, [10, 1], p_target=0.1, noise=0.5)


def test_sgns_penalizes_overshoot_more_than_undershoot() -> None:
    spec = LossSpec("sgns", k=2.0)
    w = sgns_optimum(0.01, 0.05, 2.0)
    assert w == pytest.approx(np.log(0.1))
    for delta, upper, lower in sgns_asymmetry(spec, w, [0.5, 1.0, 2.0, 4.0], p_target=0.01, noise=0.05):
        assert upper > lower > 0.0, delta


def test_truncated_svd_is_near_optimal_on_gaussian_matrices() -> None:
    rng = np.random.default_rng(20)
    for trial in range(20):
        matrix = rng.normal(size=(200, 300))
        result = truncated_svd(matrix, 20, seed=trial)
        s = np.linalg.svd(matrix, compute_uv=False)
        optimum = float(np.sqrt(np.sum(s[20:] ** 2)))
        assert np.linalg.norm(matrix - result.reconstruct()) <= 1.05 * optimum, trial


def test_sgns_loss_is_the_objective_gap_to_the_optimum() -> None:
    rng = np.random.default_rng(9)
    for _ in range(100):
        p_target = rng.uniform(0.01, 0.5)
        noise = rng.uniform(0.01, 0.5)
        k = float(rng.integers(1, 16))
        occurrences = rng.uniform(1.0, 100.0)
        w = sgns_optimum(p_target, noise, k)
        v = w + rng.normal(scale=2.0)
        expected = sgns_objective(w, p_target, noise, k, occurrences) - sgns_objective(
            v, p_target, noise, k, occurrences
        )
        value = loss_eval(LossSpec("sgns", k=k), v, w, p_target=p_target, noise=noise, occurrences=occurrences)
        assert value == pytest.approx(expected, rel=1e-9, abs=1e-8)


@pytest.mark.parametrize("kind", ["l2", "glove", "sgns"])
def test_loss_gradients_at_random_points(kind: str) -> None:
    rng = np.random.default_rng(31)
    v = rng.normal(scale=2.0, size=100)
    w = v + rng.normal(size=100)
    side = {}
    spec = LossSpec(kind)
    if kind == "glove":
        side = {"count": rng.uniform(0.5, 30.0, size=100)}
    elif kind == "sgns":
        spec = LossSpec("sgns", k=5.0)
        side = {
            "p_target": rng.uniform(0.0, 0.5, size=100),
            "noise": rng.uniform(0.01, 0.5, size=100),
            "occurrences": rng.uniform(1.0, 10.0, size=100),
        }
    eps = 1e-6
    numeric = (loss_eval(spec, v + eps, w, **side) - loss_eval(spec, v - eps, w, **side)) / (2 * eps)
    np.testing.assert_allclose(loss_grad(spec, v, w, **side), numeric, rtol=1e-4, atol=1e-6)
