from typing import List, Optional

import numpy as np

from easense.errors import ShapeError
from easense.moo_algorithms.operators import dominance_matrix


class ParetoArchive:
    """Union of every generation's population objective vectors.

    ``points`` keeps the raw union (duplicates included); the deduplicated
    first front is maintained incrementally as generations arrive. With a
    ``capacity`` the oldest snapshots are released once the union grows past
    it, while the maintained front still reflects every generation seen.
    """

    def __init__(self, m: int, capacity: Optional[int] = None):
        self.m = m
        self.capacity = capacity
        self._snapshots: List[np.ndarray] = []
        self._front = np.empty((0, m))
        self._total = 0
        self._released = 0
        self._generations = 0

    def add_generation(self, objectives: np.ndarray) -> None:
        block = np.array(objectives, dtype=float, copy=True)
        if block.ndim != 2 or block.shape[1] != self.m:
            raise ShapeError(f"archive holds {self.m}-objective vectors, got shape {block.shape}")
        self._snapshots.append(block)
        self._generations += 1
        self._total += block.shape[0]
        self._front = _first_front(np.vstack([self._front, block]))
        if self.capacity is not None:
            while len(self._snapshots) > 1 and self.size > self.capacity:
                self._released += self._snapshots.pop(0).shape[0]

    @property
    def generations(self) -> int:
        return self._generations

    @property
    def total_added(self) -> int:
        return self._total

    @property
    def size(self) -> int:
        return self._total - self._released

    @property
    def points(self) -> np.ndarray:
        if not self._snapshots:
            return np.empty((0, self.m))
        return np.vstack(self._snapshots)

    @property
    def last_generation(self) -> np.ndarray:
        if not self._snapshots:
            return np.empty((0, self.m))
        return self._snapshots[-1]

    def nondominated(self) -> np.ndarray:
        """Exact-duplicate-free first front of everything added so far."""
        return self._front.copy()


def _first_front(F: np.ndarray) -> np.ndarray:
    unique = np.unique(F, axis=0)
    if unique.shape[0] == 0:
        return unique
    return unique[~dominance_matrix(unique).any(axis=0)]
