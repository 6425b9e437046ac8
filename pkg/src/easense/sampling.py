"""Morris, Morris-LHS and Sobol sample plans over the unit cube."""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.stats import qmc

from easense.errors import ConfigError
from easense.hyperspace import HyperSpace, grid_delta

logger = logging.getLogger(__name__)

METHODS = ("morris", "morris_lhs", "sobol")
MAX_REDRAWS = 100


@dataclass(frozen=True)
class Trajectory:
    """A one-at-a-time walk of k+1 grid points.

    ``moved_dim[j]`` is the coordinate changed between ``points[j]`` and
    ``points[j+1]`` and ``delta_signs[j]`` the direction of that step.
    """

    points: np.ndarray
    moved_dim: tuple
    delta_signs: tuple

    @property
    def k(self) -> int:
        return len(self.moved_dim)


@dataclass(frozen=True)
class SobolPlan:
    """A and B base samples plus the k mixed matrices C_i (B with column i from A)."""

    A: np.ndarray
    B: np.ndarray
    C: List[np.ndarray]

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def total_points(self) -> int:
        return self.n * (len(self.C) + 2)

    def stacked(self) -> np.ndarray:
        return np.vstack([self.A, self.B] + list(self.C))


@dataclass
class SamplePlan:
    """A batch of hyperparameter points in evaluation order plus its method structure."""

    method: str
    seed: int
    k: int
    p: Optional[int] = None
    r: Optional[int] = None
    n: Optional[int] = None
    trajectories: List[Trajectory] = field(default_factory=list)
    sobol: Optional[SobolPlan] = None
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def points(self) -> np.ndarray:
        if self.method == "sobol":
            return self.sobol.stacked()
        return np.vstack([t.points for t in self.trajectories])

    @property
    def total_points(self) -> int:
        if self.method == "sobol":
            return self.sobol.total_points
        return len(self.trajectories) * (self.k + 1)

    def block_labels(self) -> List[str]:
        """Which trajectory or matrix each evaluation row belongs to."""
        if self.method == "sobol":
            labels = ["A"] * self.n + ["B"] * self.n
            for i in range(self.k):
                labels += [f"C{i}"] * self.n
            return labels
        return [f"T{t}" for t in range(len(self.trajectories)) for _ in range(self.k + 1)]

    def to_manifest(self) -> Dict[str, Any]:
        manifest = {
            "method": self.method,
            "seed": self.seed,
            "k": self.k,
            "sizes": {"p": self.p, "r": self.r, "n": self.n},
            "total_points": self.total_points,
            "points": self.points.tolist(),
            "notes": self.notes,
        }
        if self.method != "sobol":
            manifest["moved_dim"] = [list(t.moved_dim) for t in self.trajectories]
            manifest["delta_signs"] = [list(t.delta_signs) for t in self.trajectories]
        return manifest

    @classmethod
    def from_manifest(cls, data: Dict[str, Any]) -> "SamplePlan":
        points = np.asarray(data["points"], dtype=float)
        k = int(data["k"])
        sizes = data["sizes"]
        plan = cls(method=data["method"], seed=int(data["seed"]), k=k,
                   p=sizes.get("p"), r=sizes.get("r"), n=sizes.get("n"), notes=data.get("notes", {}))
        if plan.method == "sobol":
            n = plan.n
            blocks = [points[i * n:(i + 1) * n] for i in range(k + 2)]
            plan.sobol = SobolPlan(A=blocks[0], B=blocks[1], C=blocks[2:])
        else:
            plan.trajectories = [
                Trajectory(points=points[t * (k + 1):(t + 1) * (k + 1)],
                           moved_dim=tuple(moved), delta_signs=tuple(signs))
                for t, (moved, signs) in enumerate(zip(data["moved_dim"], data["delta_signs"]))
            ]
        return plan


def _check_morris(r: int, p: int) -> int:
    if r < 1:
        raise ConfigError(f"Morris sampling needs r >= 1 trajectories, got {r}")
    grid_delta(p)
    return p // 2


def _walk(levels: np.ndarray, order: np.ndarray, signs: np.ndarray, p: int) -> Trajectory:
    half = p // 2
    current = levels.copy()
    rows = [current.copy()]
    step_signs = []
    for d in order:
        current[d] += int(signs[d]) * half
        rows.append(current.copy())
        step_signs.append(int(signs[d]))
    points = np.array(rows, dtype=float) / (p - 1)
    return Trajectory(points=points, moved_dim=tuple(int(d) for d in order), delta_signs=tuple(step_signs))


def _key(levels: np.ndarray, order: np.ndarray, signs: np.ndarray) -> tuple:
    return tuple(levels.tolist()), tuple(order.tolist()), tuple(signs.tolist())


def morris_sample(space: HyperSpace, r: int, p: int, seed: int) -> List[Trajectory]:
    """Draw r random OAT trajectories on the p-level grid.

    Start levels are restricted so the drawn ±Δ step of every dimension stays
    inside [0, 1]; duplicate whole trajectories are redrawn.
    """
    half = _check_morris(r, p)
    k = space.k
    rng = np.random.default_rng(seed)
    seen = set()
    trajectories = []
    for _ in range(r):
        for _ in range(MAX_REDRAWS):
            signs = rng.choice(np.array([-1, 1]), size=k)
            order = rng.permutation(k)
            low = np.where(signs > 0, 0, half)
            levels = low + rng.integers(0, half, size=k)
            key = _key(levels, order, signs)
            if key not in seen:
                break
        else:
            logger.warning(f"grid too small for {r} distinct trajectories (k={k}, p={p}); keeping a duplicate")
        seen.add(key)
        trajectories.append(_walk(levels, order, signs, p))
    return trajectories


def _lhs_levels(k: int, r: int, p: int, rng: np.random.Generator) -> np.ndarray:
    """Latin-hypercube start levels; each block of p starts covers every level once per dimension."""
    levels = np.empty((r, k), dtype=int)
    filled = 0
    while filled < r:
        block = min(p, r - filled)
        u = qmc.LatinHypercube(d=k, seed=rng).random(block)
        levels[filled:filled + block] = np.minimum(np.floor(u * p).astype(int), p - 1)
        filled += block
    return levels


def morris_lhs_sample(space: HyperSpace, r: int, p: int, seed: int) -> List[Trajectory]:
    """OAT trajectories whose start points are Latin-hypercube stratified on the grid.

    A start in the lower half of the levels steps up, one in the upper half
    steps down, so no step leaves the unit interval.
    """
    half = _check_morris(r, p)
    k = space.k
    rng = np.random.default_rng(seed)
    starts = _lhs_levels(k, r, p, rng)
    seen = set()
    trajectories = []
    for levels in starts:
        signs = np.where(levels < half, 1, -1)
        for _ in range(MAX_REDRAWS):
            order = rng.permutation(k)
            key = _key(levels, order, signs)
            if key not in seen:
                break
        seen.add(key)
        trajectories.append(_walk(levels, order, signs, p))
    return trajectories


def sobol_sample(space: HyperSpace, n: int, seed: int, low_discrepancy: bool = False) -> SobolPlan:
    """Independent uniform A and B blocks and the k column-swapped C_i blocks."""
    if n < 2:
        raise ConfigError(f"Sobol sampling needs N >= 2, got {n}")
    k = space.k
    rng = np.random.default_rng(seed)
    if low_discrepancy:
        base = qmc.Sobol(d=2 * k, scramble=True, seed=rng).random(n)
        A, B = base[:, :k], base[:, k:]
    else:
        A = rng.random((n, k))
        B = rng.random((n, k))
    C = []
    for i in range(k):
        Ci = B.copy()
        Ci[:, i] = A[:, i]
        C.append(Ci)
    return SobolPlan(A=A, B=B, C=C)


def build_plan(space: HyperSpace, method: str, seed: int, r: int = 50, p: int = 10,
               n: int = 100, low_discrepancy: bool = False) -> SamplePlan:
    """Dispatch to the sampler named by ``method``."""
    if method == "morris":
        plan = SamplePlan(method=method, seed=seed, k=space.k, p=p, r=r,
                          trajectories=morris_sample(space, r, p, seed))
    elif method == "morris_lhs":
        plan = SamplePlan(method=method, seed=seed, k=space.k, p=p, r=r,
                          trajectories=morris_lhs_sample(space, r, p, seed),
                          notes={"lhs_starts": "stratified then snapped to grid levels"})
    elif method == "sobol":
        plan = SamplePlan(method=method, seed=seed, k=space.k, n=n,
                          sobol=sobol_sample(space, n, seed, low_discrepancy),
                          notes={"low_discrepancy": low_discrepancy})
    else:
        raise ConfigError(f"unknown sampling method {method!r}; choose from {METHODS}")
    logger.info(f"{method} plan: {plan.total_points} points over k={space.k} hyperparameters")
    return plan

