from math import comb

import numpy as np
import pytest

from easense.simplex import das_dennis_points, divisions_for, lattice_size, simplex_points


@pytest.mark.parametrize("m,divisions,count", [(3, 4, 15), (3, 12, 91), (2, 1, 2), (5, 3, 35)])
def test_lattice_counts(m, divisions, count):
    points = das_dennis_points(m, divisions)
    assert points.shape == (count, m)
    assert lattice_size(m, divisions) == count == comb(divisions + m - 1, m - 1)


def test_lattice_points_lie_on_the_simplex():
    points = das_dennis_points(4, 6)
    assert np.all(points >= 0)
    np.testing.assert_allclose(points.sum(axis=1), 1.0, atol=1e-12)
    assert len(np.unique(points, axis=0)) == len(points)


def test_two_objective_unit_lattice():
    np.testing.assert_array_equal(das_dennis_points(2, 1), [[0.0, 1.0], [1.0, 0.0]])


def test_divisions_for_smallest_sufficient_lattice():
    assert divisions_for(3, 91) == 12
    assert divisions_for(3, 92) == 13
    assert divisions_for(2, 5) == 4


def test_simplex_points_truncates_and_handles_one():
    assert simplex_points(3, 100).shape == (100, 3)
    np.testing.assert_allclose(simplex_points(3, 1), [[1 / 3, 1 / 3, 1 / 3]])


def test_invalid_lattices():
    with pytest.raises(ValueError):
        das_dennis_points(1, 4)
    with pytest.raises(ValueError):
        das_dennis_points(3, 0)
    with pytest.raises(ValueError):
        simplex_points(3, 0)
