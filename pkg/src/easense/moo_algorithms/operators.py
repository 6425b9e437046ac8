"""Variation operators, non-dominated sorting and decomposition scalarizations."""
from typing import List, Optional, Tuple

import numpy as np

from easense.errors import ShapeError
from easense.simplex import das_dennis_points, divisions_for, simplex_points

ZERO_WEIGHT = 1e-6
NADIR_GUARD = 1e-12
DECOMPOSITION_MODES = ("PBI", "Tchebycheff", "Tchebycheff-normalized", "modified-Tchebycheff")


def sbx(parents_a: np.ndarray, parents_b: np.ndarray, lower: np.ndarray, upper: np.ndarray,
        prob: float, di: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover on paired rows; a pair crosses with probability ``prob``."""
    pairs, n = parents_a.shape
    mu = rng.random((pairs, n))
    beta = np.where(mu <= 0.5, (2 * mu) ** (1 / (di + 1)), (2 - 2 * mu) ** (-1 / (di + 1)))
    beta = beta * np.where(rng.random((pairs, n)) < 0.5, -1.0, 1.0)
    beta[rng.random((pairs, n)) < 0.5] = 1.0
    beta[rng.random(pairs) >= prob] = 1.0
    centre = (parents_a + parents_b) / 2
    half = (parents_a - parents_b) / 2
    child_a = np.clip(centre + beta * half, lower, upper)
    child_b = np.clip(centre - beta * half, lower, upper)
    return child_a, child_b


def polynomial_mutation(X: np.ndarray, lower: np.ndarray, upper: np.ndarray, prob: float,
                        di: float, rng: np.random.Generator) -> np.ndarray:
    """Bounded polynomial mutation; each variable mutates with probability ``prob``."""
    X = X.copy()
    width = np.broadcast_to(upper - lower, X.shape)
    site = rng.random(X.shape) < prob
    mu = rng.random(X.shape)
    delta1 = (X - lower) / width
    delta2 = (upper - X) / width
    power = 1 / (di + 1)
    low = site & (mu <= 0.5)
    high = site & (mu > 0.5)
    X[low] += width[low] * ((2 * mu[low] + (1 - 2 * mu[low]) * (1 - delta1[low]) ** (di + 1)) ** power - 1)
    X[high] += width[high] * (1 - (2 * (1 - mu[high]) + 2 * (mu[high] - 0.5) * (1 - delta2[high]) ** (di + 1)) ** power)
    return np.clip(X, lower, upper)


def dominance_matrix(F: np.ndarray) -> np.ndarray:
    """D[i, j] is True when row i Pareto-dominates row j (minimization)."""
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


def fast_nondominated_sort(F: np.ndarray) -> List[np.ndarray]:
    """Partition row indices into fronts F1, F2, ...; equal rows share a front."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 2:
        raise ShapeError(f"objectives must be a 2-D array, got shape {F.shape}")
    if F.shape[0] == 0:
        return []
    dom = dominance_matrix(F)
    dominated_by = dom.sum(axis=0)
    remaining = np.ones(F.shape[0], dtype=bool)
    fronts = []
    current = np.flatnonzero(dominated_by == 0)
    while current.size:
        fronts.append(current)
        remaining[current] = False
        dominated_by = dominated_by - dom[current].sum(axis=0)
        current = np.flatnonzero(remaining & (dominated_by == 0))
    return fronts


def nondominated_ranks(F: np.ndarray) -> np.ndarray:
    ranks = np.empty(len(F), dtype=int)
    for rank, front in enumerate(fast_nondominated_sort(F)):
        ranks[front] = rank
    return ranks


def decompose(f: np.ndarray, w: np.ndarray, z_star: np.ndarray, mode: str = "Tchebycheff",
              theta: float = 5.0, nadir: Optional[np.ndarray] = None) -> np.ndarray:
    """Scalarize objective vectors against weight vectors; rows broadcast together."""
    f = np.asarray(f, dtype=float)
    w = np.asarray(w, dtype=float)
    diff = f - np.asarray(z_star, dtype=float)
    w = np.where(w == 0, ZERO_WEIGHT, w)
    if mode == "Tchebycheff":
        return np.max(w * np.abs(diff), axis=-1)
    if mode == "Tchebycheff-normalized":
        if nadir is None:
            raise ValueError("normalized Tchebycheff needs a nadir estimate")
        scale = np.maximum(np.asarray(nadir, dtype=float) - z_star, NADIR_GUARD)
        return np.max(w * np.abs(diff) / scale, axis=-1)
    if mode == "modified-Tchebycheff":
        return np.max(np.abs(diff) / w, axis=-1)
    if mode == "PBI":
        unit = w / np.linalg.norm(w, axis=-1, keepdims=True)
        along = np.sum(diff * unit, axis=-1)
        d2 = np.linalg.norm(diff - along[..., None] * unit, axis=-1)
        return np.abs(along) + theta * d2
    raise ValueError(f"unknown decomposition mode {mode!r}; choose from {DECOMPOSITION_MODES}")


__all__ = [
    "DECOMPOSITION_MODES",
    "das_dennis_points",
    "decompose",
    "divisions_for",
    "dominance_matrix",
    "fast_nondominated_sort",
    "nondominated_ranks",
    "polynomial_mutation",
    "sbx",
    "simplex_points",
]
