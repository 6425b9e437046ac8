import numpy as np
import pytest

from easense.errors import ConfigError, ShapeError
from easense.metrics import igd
from easense.moo_algorithms import (
    MoeadConfig,
    Nsga3Config,
    ParetoArchive,
    decompose,
    fast_nondominated_sort,
    polynomial_mutation,
    run_moead,
    run_nsga3,
    sbx,
)
from easense.moo_algorithms.moead import neighborhood_size
from easense.moo_algorithms.operators import DECOMPOSITION_MODES, nondominated_ranks
from easense.problems import get_problem


def brute_force_fronts(F):
    """Peel first fronts with an O(s^2 m) pairwise dominance check."""
    remaining = list(range(len(F)))
    fronts = []
    while remaining:
        front = [i for i in remaining
                 if not any(np.all(F[j] <= F[i]) and np.any(F[j] < F[i]) for j in remaining)]
        fronts.append(sorted(front))
        remaining = [i for i in remaining if i not in front]
    return fronts


def test_sort_matches_brute_force_oracle():
    rng = np.random.default_rng(2024)
    for trial in range(500):
        size = int(rng.integers(1, 65))
        m = 2 if trial % 2 else 3
        F = rng.integers(0, 8, size=(size, m)).astype(float)
        got = [sorted(front.tolist()) for front in fast_nondominated_sort(F)]
        assert got == brute_force_fronts(F)


def test_sort_hand_example_and_duplicates():
    fronts = fast_nondominated_sort(np.array([[1.0, 2.0], [2.0, 1.0], [3.0, 3.0]]))
    assert [f.tolist() for f in fronts] == [[0, 1], [2]]
    assert [f.tolist() for f in fast_nondominated_sort(np.ones((3, 2)))] == [[0, 1, 2]]
    assert [f.tolist() for f in fast_nondominated_sort(np.array([[4.0, 4.0]]))] == [[0]]
    assert fast_nondominated_sort(np.empty((0, 2))) == []


def test_sort_rejects_flat_input():
    with pytest.raises(ShapeError):
        fast_nondominated_sort(np.array([1.0, 2.0]))


def test_fronts_partition_and_order(rng):
    F = rng.random((60, 3))
    ranks = nondominated_ranks(F)
    fronts = fast_nondominated_sort(F)
    assert sorted(np.concatenate(fronts).tolist()) == list(range(60))
    for i in range(60):
        for j in range(60):
            if np.all(F[i] <= F[j]) and np.any(F[i] < F[j]):
                assert ranks[i] < ranks[j]


def test_tchebycheff_hand_value():
    z = np.zeros(3)
    f = np.array([0.2, 0.4, 0.1])
    assert decompose(f, [0.5, 0.25, 0.25], z, "Tchebycheff") == pytest.approx(0.1)


@pytest.mark.parametrize("mode", ["PBI", "Tchebycheff", "Tchebycheff-normalized", "modified-Tchebycheff"])
def test_reference_point_scores_zero(mode):
    z = np.array([0.3, 0.1])
    assert decompose(z, [0.5, 0.5], z, mode, nadir=np.array([1.0, 1.0])) == pytest.approx(0.0)


def test_pbi_along_the_weight_direction():
    w = np.array([0.6, 0.8])
    assert decompose(2.0 * w, w, np.zeros(2), "PBI") == pytest.approx(2.0)


def test_pbi_on_the_ideal_side_of_the_reference():
    value = decompose([0.5, 0.5], [0.5, 0.5], np.ones(2), "PBI")
    assert value == pytest.approx(np.sqrt(0.5))


@pytest.mark.parametrize("mode", DECOMPOSITION_MODES)
def test_every_mode_is_non_negative(rng, mode):
    z = np.full(3, 0.5)
    f = rng.random((200, 3))
    w = rng.dirichlet(np.ones(3), size=200)
    values = decompose(f, w, z, mode, nadir=np.full(3, 1.5))
    assert values.shape == (200,)
    assert np.all(values >= 0.0)


def test_zero_weights_are_floored():
    value = decompose([1.0, 1.0], [1.0, 0.0], np.zeros(2), "modified-Tchebycheff")
    assert value == pytest.approx(1.0 / 1e-6)


def test_tchebycheff_is_monotone_and_non_negative(rng):
    for _ in range(200):
        f = rng.random(3)
        w = rng.dirichlet(np.ones(3))
        worse = f.copy()
        worse[rng.integers(3)] += rng.random()
        assert decompose(f, w, np.zeros(3)) >= 0.0
        assert decompose(worse, w, np.zeros(3)) >= decompose(f, w, np.zeros(3))


def test_degenerate_nadir_is_guarded():
    value = decompose([1.0, 1.0], [0.5, 0.5], np.zeros(2), "Tchebycheff-normalized", nadir=np.zeros(2))
    assert np.isfinite(value)


def test_decompose_mode_errors():
    with pytest.raises(ValueError):
        decompose([1.0, 1.0], [0.5, 0.5], np.zeros(2), "Tchebycheff-normalized")
    with pytest.raises(ValueError):
        decompose([1.0, 1.0], [0.5, 0.5], np.zeros(2), "weighted-sum")


def test_variation_operators_respect_bounds(rng):
    lower, upper = np.zeros(5), np.full(5, 2.0)
    a, b = rng.random((20, 5)) * 2, rng.random((20, 5)) * 2
    child_a, child_b = sbx(a, b, lower, upper, 1.0, 2.0, rng)
    mutated = polynomial_mutation(child_a, lower, upper, 1.0, 2.0, rng)
    for X in (child_a, child_b, mutated):
        assert np.all(X >= lower) and np.all(X <= upper)


def test_inert_operators_return_parents(rng):
    lower, upper = np.zeros(4), np.ones(4)
    a, b = rng.random((10, 4)), rng.random((10, 4))
    child_a, child_b = sbx(a, b, lower, upper, 0.0, 20.0, rng)
    np.testing.assert_allclose(child_a, a)
    np.testing.assert_allclose(child_b, b)
    np.testing.assert_array_equal(polynomial_mutation(a, lower, upper, 0.0, 20.0, rng), a)


def test_archive_keeps_union_and_front():
    archive = ParetoArchive(2)
    archive.add_generation(np.array([[1.0, 3.0], [3.0, 1.0], [4.0, 4.0]]))
    archive.add_generation(np.array([[2.0, 2.0], [1.0, 3.0]]))
    assert archive.generations == 2 and archive.size == 5
    assert archive.points.shape == (5, 2)
    np.testing.assert_array_equal(archive.nondominated(), [[1.0, 3.0], [2.0, 2.0], [3.0, 1.0]])
    np.testing.assert_array_equal(archive.last_generation, [[2.0, 2.0], [1.0, 3.0]])


def test_archive_capacity_releases_old_snapshots():
    archive = ParetoArchive(2, capacity=4)
    archive.add_generation(np.array([[0.0, 5.0], [5.0, 0.0], [6.0, 6.0]]))
    archive.add_generation(np.array([[3.0, 3.0], [4.0, 4.0], [7.0, 7.0]]))
    assert archive.size == 3 and archive.total_added == 6
    assert [0.0, 5.0] in archive.nondominated().tolist()


def test_archive_shape_check():
    with pytest.raises(ShapeError):
        ParetoArchive(3).add_generation(np.zeros((2, 2)))


def test_moead_neighborhood_rule():
    assert neighborhood_size(0.05, 100) == 5
    assert neighborhood_size(0.05, 10) == 2
    assert neighborhood_size(0.5, 3) == 2


def _nsga3(lam=20, **values):
    return Nsga3Config.from_values({"lambda": lam, **values})


def _moead(lam=20, **values):
    return MoeadConfig.from_values({"lambda": lam, **values})


@pytest.mark.parametrize("run,config", [(run_nsga3, _nsga3()), (run_moead, _moead())])
def test_budget_law_and_archive_union(run, config):
    problem = get_problem("dtlz2")
    result = run(problem, config, 1010, seed=5)
    assert 1010 - 20 < result.evals_used <= 1010
    assert result.archive.size == result.archive.generations * 20
    final = {tuple(row) for row in result.objectives.tolist()}
    assert final <= {tuple(row) for row in result.archive.points.tolist()}


@pytest.mark.parametrize("run,config", [(run_nsga3, _nsga3()), (run_moead, _moead(mode="PBI"))])
def test_moo_runs_are_deterministic(run, config):
    problem = get_problem("dtlz1")
    first, second = run(problem, config, 600, seed=8), run(problem, config, 600, seed=8)
    np.testing.assert_array_equal(first.archive.points, second.archive.points)


def test_nsga3_generation_count():
    result = run_nsga3(get_problem("dtlz2"), _nsga3(lam=10), 10_000, seed=0)
    assert result.generations == 1000


def test_moo_budget_below_one_generation():
    with pytest.raises(ConfigError):
        run_nsga3(get_problem("dtlz2"), _nsga3(lam=50), 49, seed=0)
    with pytest.raises(ConfigError):
        run_moead(get_problem("dtlz2"), _moead(lam=50), 49, seed=0)


def test_config_splits_common_fields():
    config = _moead(lam=40, sbx_prob=0.5, mode="PBI", neighbor_ratio=0.2)
    assert config.common.lam == 40 and config.common.sbx_prob == 0.5
    assert config.mode == "PBI" and config.neighbor_ratio == 0.2


@pytest.mark.slow
def test_nsga3_converges_on_dtlz2():
    problem = get_problem("dtlz2")
    front = problem.sample_front(91)
    scores = [igd(run_nsga3(problem, _nsga3(lam=92), 10_000, seed).archive.nondominated(), front)
              for seed in range(5)]
    assert np.median(scores) < 0.1


@pytest.mark.slow
def test_normalized_tchebycheff_beats_raw_on_dtlz3():
    problem = get_problem("dtlz3")
    front = problem.sample_front(91)

    def median_igd(mode):
        return np.median([igd(run_moead(problem, _moead(lam=91, mode=mode), 10_000, seed).archive.nondominated(),
                              front) for seed in range(5)])

    assert median_igd("Tchebycheff-normalized") < median_igd("Tchebycheff")
