import logging
from itertools import combinations

import numpy as np
import pytest

from easense.errors import ShapeError, UndefinedMetricError
from easense.metrics import (
    MetricValue,
    ReferenceData,
    average_runs,
    gd,
    hv,
    hv_monte_carlo,
    igd,
    score_run,
)
from easense.moo_algorithms import ParetoArchive
from easense.problems import get_problem
from easense.soo_algorithms import RunResult

CORNERS = np.array([[0.0, 1.0], [1.0, 0.0]])


def test_gd_and_igd_hand_instance():
    assert gd([[0.5, 0.5]], CORNERS) == pytest.approx(0.70711, abs=1e-5)
    assert igd([[0.5, 0.5]], CORNERS) == pytest.approx(0.70711, abs=1e-5)


def test_gd_divides_root_sum_by_front_size():
    A = np.array([[0.0, 1.0], [0.0, 2.0]])
    assert gd(A, CORNERS) == pytest.approx(np.sqrt(0.0 + 1.0) / 2)


def test_distance_metrics_vanish_on_the_reference():
    assert gd(CORNERS, CORNERS) == 0.0
    assert igd(CORNERS, CORNERS) == 0.0


def test_distance_metrics_need_points():
    with pytest.raises(UndefinedMetricError):
        gd(np.empty((0, 2)), CORNERS)
    with pytest.raises(UndefinedMetricError):
        igd([[0.5, 0.5]], np.empty((0, 2)))
    with pytest.raises(ShapeError):
        igd([[0.5, 0.5, 0.5]], CORNERS)


def test_hv_hand_instances():
    assert hv([[0.5, 0.5], [0.25, 0.75]], [1.0, 1.0]) == pytest.approx(0.3125, abs=1e-12)
    assert hv([[0.25, 0.25]], [1.0, 1.0]) == pytest.approx(0.5625, abs=1e-12)
    assert hv([[0.5, 0.5, 0.5]], [1.0, 1.0, 1.0]) == pytest.approx(0.125)


def test_hv_of_empty_or_outside_front_is_zero():
    assert hv(np.empty((0, 2)), [1.0, 1.0]) == 0.0
    assert hv([[2.0, 0.5]], [1.0, 1.0]) == 0.0


def test_hv_warns_when_reference_is_not_beyond_the_front(caplog):
    with caplog.at_level(logging.WARNING, logger="easense.metrics"):
        hv([[0.5, 1.5]], [1.0, 1.0])
    assert "does not exceed" in caplog.text


def test_hv_ignores_dominated_and_duplicate_points():
    base = hv([[0.2, 0.6], [0.6, 0.2]], [1.0, 1.0])
    assert hv([[0.2, 0.6], [0.6, 0.2], [0.7, 0.7], [0.2, 0.6]], [1.0, 1.0]) == pytest.approx(base)


def _inclusion_exclusion_hv(A, r):
    total = 0.0
    for size in range(1, len(A) + 1):
        for subset in combinations(range(len(A)), size):
            corner = A[list(subset)].max(axis=0)
            total += (-1) ** (size + 1) * np.prod(np.clip(r - corner, 0.0, None))
    return total


@pytest.mark.parametrize("m", [2, 3, 4])
def test_hv_matches_inclusion_exclusion(rng, m):
    r = np.full(m, 1.1)
    for _ in range(20):
        A = rng.random((6, m))
        assert hv(A, r) == pytest.approx(_inclusion_exclusion_hv(A, r), rel=1e-10, abs=1e-12)


def test_hv_monotone_and_scale_equivariant(rng):
    for _ in range(50):
        A = rng.random((8, 3))
        r = np.full(3, 1.1)
        extra = rng.random((1, 3))
        assert hv(np.vstack([A, extra]), r) >= hv(A, r) - 1e-12
        assert hv(2.5 * A, 2.5 * r) == pytest.approx(2.5 ** 3 * hv(A, r))


def test_hv_matches_monte_carlo_on_random_fronts():
    rng = np.random.default_rng(7)
    r = np.full(3, 1.1)
    for trial in range(20):
        A = rng.random((int(rng.integers(1, 9)), 3))
        estimate, stderr = hv_monte_carlo(A, r, samples=200_000, seed=trial)
        assert abs(hv(A, r) - estimate) <= 4 * stderr + 1e-12


@pytest.mark.slow
def test_hv_within_three_sigma_of_million_sample_oracle():
    rng = np.random.default_rng(11)
    r = np.full(3, 1.1)
    inside = 0
    for trial in range(200):
        A = rng.random((int(rng.integers(1, 12)), 3))
        estimate, stderr = hv_monte_carlo(A, r, samples=1_000_000, seed=trial)
        inside += abs(hv(A, r) - estimate) <= 3 * stderr + 1e-12
    assert inside >= 196


def test_hv_of_sampled_dtlz2_front_is_below_the_box():
    problem = get_problem("dtlz2")
    reference = ReferenceData.for_problem(problem)
    volume = hv(reference.front, reference.hv_reference)
    assert 0.5 < volume < 1.1 ** 3 - np.pi / 6


def test_score_run_best_uses_history_minimum():
    result = RunResult(best_value=1.0, best_point=np.zeros(2), evals_used=30, history=[3.0, 2.0, 1.0])
    value = score_run(result, "best")
    assert value == MetricValue(metric="best", value=1.0, orientation="minimize")


def test_score_run_scores_archive_front():
    archive = ParetoArchive(2)
    archive.add_generation(np.array([[0.5, 0.5], [0.9, 0.9]]))
    reference = ReferenceData(front=CORNERS, hv_reference=np.array([1.0, 1.0]))
    assert score_run(archive, "igd", reference).value == pytest.approx(np.sqrt(0.5))
    assert score_run(archive, "gd", reference).value == pytest.approx(np.sqrt(0.5))
    hv_value = score_run(archive, "hv", reference)
    assert hv_value.value == pytest.approx(0.25) and hv_value.orientation == "maximize"


def test_score_run_rejects_mismatched_inputs():
    run = RunResult(best_value=1.0, best_point=np.zeros(2), evals_used=10, history=[1.0])
    archive = ParetoArchive(2)
    archive.add_generation(np.array([[0.5, 0.5]]))
    with pytest.raises(UndefinedMetricError):
        score_run(archive, "best")
    with pytest.raises(UndefinedMetricError):
        score_run(run, "igd", ReferenceData(front=CORNERS, hv_reference=np.ones(2)))
    with pytest.raises(UndefinedMetricError):
        score_run(archive, "igd")
    with pytest.raises(UndefinedMetricError):
        score_run(archive, "spread")


def test_average_runs_skips_failures():
    assert average_runs([1.0, 3.0, float("nan")]) == (2.0, 1)
    mean, failures = average_runs([float("nan"), float("inf")])
    assert np.isnan(mean) and failures == 2
