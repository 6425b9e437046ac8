import numpy as np
import pytest

from easense.errors import DegenerateModelError, ShapeError
from easense.hyperspace import decode, grid_delta
from easense.indices import (
    EEMatrix,
    build_report,
    ee_matrix,
    elementary_effects,
    morris_mu_sigma,
    morris_report,
    sobol_indices,
    sobol_report,
)
from easense.sampling import Trajectory, build_plan, sobol_sample


def _outputs(space, trajectories, f):
    return [[f(decode(space, u)) for u in t.points] for t in trajectories]


def linear(config):
    return 3.0 * config["x1"] + config["x2"]


def ishigami(X, a=7.0, b=0.1):
    return np.sin(X[:, 0]) + a * np.sin(X[:, 1]) ** 2 + b * X[:, 2] ** 4 * np.sin(X[:, 0])


def _to_box(U):
    return -np.pi + 2 * np.pi * U


def ishigami_oracle(a=7.0, b=0.1):
    v1 = 0.5 * (1 + b * np.pi ** 4 / 5) ** 2
    v2 = a ** 2 / 8
    v13 = b ** 2 * np.pi ** 8 * (1 / 18 - 1 / 50)
    total = v1 + v2 + v13
    return np.array([v1, v2, 0.0]) / total, v13 / total


def test_linear_model_effects_are_its_coefficients(unit_space):
    plan = build_plan(unit_space, "morris", seed=0, r=50, p=10)
    report = morris_report("morris", unit_space.names, plan.trajectories,
                           _outputs(unit_space, plan.trajectories, linear), grid_delta(10))
    np.testing.assert_allclose(report.direct, [3.0, 1.0], atol=1e-10)
    np.testing.assert_allclose(report.interaction, [0.0, 0.0], atol=1e-10)
    assert report.ranked_names() == ["x1", "x2"]


def test_constant_model_has_zero_effects(unit_space):
    plan = build_plan(unit_space, "morris", seed=1, r=3, p=4)
    for traj in plan.trajectories:
        np.testing.assert_array_equal(elementary_effects(traj, np.ones(3), grid_delta(4)), [0.0, 0.0])


def test_product_model_hand_effect():
    traj = Trajectory(points=np.array([[0.0, 1 / 3], [2 / 3, 1 / 3], [2 / 3, 1.0]]),
                      moved_dim=(0, 1), delta_signs=(1, 1))
    y = [p[0] * p[1] for p in traj.points]
    ee = elementary_effects(traj, y, grid_delta(4))
    assert ee[0] == pytest.approx(1 / 3)


def test_negative_step_is_folded_to_forward_difference():
    traj = Trajectory(points=np.array([[1.0], [1 / 3]]), moved_dim=(0,), delta_signs=(-1,))
    assert elementary_effects(traj, [3.0, 1.0], 2 / 3)[0] == pytest.approx(3.0)


def test_elementary_effects_shape_check():
    traj = Trajectory(points=np.zeros((2, 1)), moved_dim=(0,), delta_signs=(1,))
    with pytest.raises(ShapeError):
        elementary_effects(traj, [1.0, 2.0, 3.0], 0.5)


def test_mu_sigma_of_symmetric_column():
    mu, sigma, mu_star = morris_mu_sigma(EEMatrix(values=np.array([[2.0], [-2.0]])))
    assert mu[0] == 0.0
    assert sigma[0] == pytest.approx(2.0 * np.sqrt(2.0))
    assert mu_star[0] == 2.0


def test_single_trajectory_has_no_sigma():
    mu, sigma, _ = morris_mu_sigma(EEMatrix(values=np.array([[1.0, 2.0]])))
    assert sigma is None
    np.testing.assert_array_equal(mu, [1.0, 2.0])


def test_failed_trajectories_are_dropped(unit_space):
    plan = build_plan(unit_space, "morris", seed=2, r=4, p=4)
    outputs = _outputs(unit_space, plan.trajectories, linear)
    outputs[1][2] = float("nan")
    ee = ee_matrix(plan.trajectories, outputs, grid_delta(4))
    assert ee.r == 3 and ee.dropped == 1


@pytest.mark.parametrize("estimator", ["saltelli", "jansen"])
def test_ishigami_indices_match_closed_form(ishigami_space, estimator):
    oracle_s, _ = ishigami_oracle()
    oracle_st3 = oracle_s[2] + ishigami_oracle()[1]
    estimates = []
    for seed in range(5):
        plan = sobol_sample(ishigami_space, 2 ** 14, seed=seed)
        yA, yB = ishigami(_to_box(plan.A)), ishigami(_to_box(plan.B))
        yC = [ishigami(_to_box(C)) for C in plan.C]
        result = sobol_indices(yA, yB, yC, estimator=estimator)
        estimates.append(np.concatenate([result.S, [result.ST[2]]]))
    median = np.median(np.array(estimates), axis=0)
    np.testing.assert_allclose(median[:3], oracle_s, atol=0.05)
    assert median[3] == pytest.approx(oracle_st3, abs=0.05)


def test_additive_model_has_no_interaction_gap(unit_space):
    plan = sobol_sample(unit_space, 2 ** 12, seed=9)
    report = sobol_report(unit_space.names, plan.A.sum(axis=1), plan.B.sum(axis=1),
                          [C.sum(axis=1) for C in plan.C], estimator="jansen")
    np.testing.assert_allclose(report.gap, [0.0, 0.0], atol=0.05)
    np.testing.assert_allclose(report.direct_clamped, np.clip(report.direct, 0, 1))


def test_constant_model_is_degenerate():
    with pytest.raises(DegenerateModelError) as info:
        sobol_indices(np.ones(8), np.ones(8), [np.ones(8)], metric="igd", problem="dtlz2")
    assert info.value.metric == "igd" and info.value.problem == "dtlz2"


def test_sobol_drops_rows_across_blocks():
    rng = np.random.default_rng(0)
    a, b = rng.random(50), rng.random(50)
    c = [rng.random(50)]
    c[0][3] = np.inf
    assert sobol_indices(a, b, c).dropped == 1


def test_build_report_normalizes_and_ranks():
    report = build_report("morris", ["a", "b"], [3.0, 1.0], [0.0, 0.0])
    assert report.direct_norm == [1.0, 0.0]
    assert report.interaction_norm == [0.0, 0.0]
    assert report.ranking == [0, 1]


def test_build_report_ties_keep_param_order():
    report = build_report("sobol", ["a", "b"], [0.2, 0.8], [0.8, 0.2])
    assert report.ranking == [0, 1]
    assert report.gap == pytest.approx([0.6, -0.6])


def test_single_param_normalizes_to_zero():
    report = build_report("morris", ["only"], [5.0])
    assert report.direct_norm == [0.0]


def test_ranking_invariant_under_positive_affine_transform(rng):
    direct, interaction = rng.random(6), rng.random(6)
    names = [f"p{i}" for i in range(6)]
    base = build_report("sobol", names, direct, interaction)
    moved = build_report("sobol", names, 4.0 * direct + 2.0, 4.0 * interaction - 1.0)
    assert base.ranking == moved.ranking


def test_ordered_sums_smallest_first():
    report = build_report("morris", ["a", "b", "c"], [1.0, 3.0, 2.0], [0.0, 2.0, 1.0])
    assert [name for name, _ in report.ordered_sums()] == ["a", "c", "b"]
