"""Das-Dennis lattices on the unit simplex."""
from itertools import combinations
from math import comb

import numpy as np


def das_dennis_points(m: int, divisions: int) -> np.ndarray:
    """All points with coordinates i/divisions summing to one, in lexicographic order."""
    if m < 2:
        raise ValueError(f"a simplex lattice needs m >= 2 objectives, got {m}")
    if divisions < 1:
        raise ValueError(f"divisions must be >= 1, got {divisions}")
    rows = []
    # stars and bars: m-1 bar positions among divisions+m-1 slots
    for bars in combinations(range(divisions + m - 1), m - 1):
        edges = (-1,) + bars + (divisions + m - 1,)
        rows.append([edges[i + 1] - edges[i] - 1 for i in range(m)])
    points = np.array(rows, dtype=float) / divisions
    order = np.lexsort(points.T[::-1])
    return points[order]


def lattice_size(m: int, divisions: int) -> int:
    return comb(divisions + m - 1, m - 1)


def divisions_for(m: int, count: int) -> int:
    """Smallest division count whose lattice holds at least ``count`` points."""
    divisions = 1
    while lattice_size(m, divisions) < count:
        divisions += 1
    return divisions


def simplex_points(m: int, count: int) -> np.ndarray:
    """``count`` simplex points: the centroid for one, otherwise a truncated lattice."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if count == 1:
        return np.full((1, m), 1.0 / m)
    return das_dennis_points(m, divisions_for(m, count))[:count]
