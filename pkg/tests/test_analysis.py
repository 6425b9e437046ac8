import numpy as np
import pytest

from easense.analysis import (
    EffectSample,
    effect_matrix,
    effect_samples,
    kmeans_silhouette,
    pairwise_ttest,
    project,
    ttest_matrix,
)
from easense.errors import ShapeError
from easense.indices import build_report


def _sample(name, values):
    return EffectSample(name, "direct", np.asarray(values, dtype=float))


def test_ttest_antisymmetric_and_affine_invariant():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        x = rng.normal(size=int(rng.integers(2, 12)))
        y = rng.normal(loc=rng.normal(), size=int(rng.integers(2, 12)))
        scale, shift = rng.uniform(0.1, 10.0), rng.normal(scale=5.0)
        ab = pairwise_ttest(_sample("a", x), _sample("b", y))
        ba = pairwise_ttest(_sample("b", y), _sample("a", x))
        moved = pairwise_ttest(_sample("a", scale * x + shift), _sample("b", scale * y + shift))
        assert ba.t == pytest.approx(-ab.t, rel=1e-9, abs=1e-12)
        assert ba.p == pytest.approx(ab.p, rel=1e-9, abs=1e-12)
        assert moved.t == pytest.approx(ab.t, rel=1e-6, abs=1e-9)


def test_ttest_sign_follows_the_means():
    result = pairwise_ttest(_sample("a", [0.1, 0.2, 0.15]), _sample("b", [0.8, 0.9, 0.85]))
    assert result.t < 0 and result.p < 0.01


def test_identical_constant_samples():
    result = pairwise_ttest(_sample("a", [0.5, 0.5, 0.5]), _sample("b", [0.5, 0.5]))
    assert result == (0.0, 1.0)
    assert not result.infinite


def test_separated_constant_samples_are_infinite(caplog):
    result = pairwise_ttest(_sample("a", [1.0, 1.0]), _sample("b", [0.0, 0.0]))
    assert result.infinite and result.t > 0 and result.p == 0.0
    assert "zero pooled variance" in caplog.text


def test_ttest_needs_two_values():
    with pytest.raises(ValueError):
        pairwise_ttest(_sample("a", [1.0]), _sample("b", [0.0, 1.0]))


def test_effect_samples_reject_non_finite_values():
    with pytest.raises(ValueError):
        _sample("a", [1.0, float("nan")])


def test_ttest_matrix_is_lower_triangular():
    samples = [_sample(name, [i, i + 1.0, i + 2.0]) for i, name in enumerate("abc")]
    pairs = [(row, col) for row, col, _ in ttest_matrix(samples)]
    assert pairs == [("b:direct", "a:direct"), ("c:direct", "a:direct"), ("c:direct", "b:direct")]


def _reports():
    return [
        build_report("morris", ["lam", "beta"], [3.0, 1.0], [1.0, 0.5], metric="best", problem="sphere"),
        build_report("morris", ["lam", "beta"], [1.0, 2.0], [0.2, 0.4], metric="best", problem="rastrigin"),
        build_report("morris", ["lam", "beta"], [2.0, 2.5], [0.0, 0.9], metric="best", problem="ackley"),
    ]


def test_effect_samples_collect_both_kinds():
    samples = effect_samples(_reports())
    assert [s.label for s in samples] == ["lam:direct", "beta:direct", "lam:interaction", "beta:interaction"]
    np.testing.assert_allclose(samples[0].values, [1.0, 0.0, 0.0])
    assert effect_samples([]) == []


def test_effect_matrix_rows_are_problems():
    items, matrix = effect_matrix(_reports())
    assert items == ["sphere", "rastrigin", "ackley"]
    assert matrix.shape == (3, 4)


def _blobs(rng, k, per=20, spread=0.3):
    centers = 10.0 * np.eye(6)[:k]
    return np.vstack([c + spread * rng.normal(size=(per, 6)) for c in centers])


@pytest.mark.parametrize("k", [2, 3, 4])
def test_separated_blobs_recover_their_count(k):
    rng = np.random.default_rng(k)
    for seed in range(20):
        result = kmeans_silhouette(_blobs(rng, k), seed=seed)
        assert result.k == k
        assert result.silhouette_curve[k] > 0.8
        assert len(np.unique(result.assignments)) == k


def test_three_items_force_two_clusters():
    result = kmeans_silhouette(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
    assert result.k == 2
    assert list(result.silhouette_curve) == [2]


def test_identical_items_are_degenerate():
    result = kmeans_silhouette(np.ones((5, 3)))
    assert result.degenerate and result.k == 2
    np.testing.assert_array_equal(result.projection, np.zeros((5, 2)))


def test_too_few_items():
    with pytest.raises(ShapeError):
        kmeans_silhouette(np.zeros((2, 3)))


def test_projection_sign_convention(rng):
    matrix = rng.random((12, 4))
    coords = project(matrix)
    assert coords.shape == (12, 2)
    np.testing.assert_allclose(project(-matrix), -coords, atol=1e-10)
    along = project(np.column_stack([np.arange(6.0), np.zeros(6)]))
    assert along[-1, 0] > along[0, 0]
