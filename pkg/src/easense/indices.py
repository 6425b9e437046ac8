"""Elementary-effects and Sobol sensitivity indices, normalization and ranking."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from easense.errors import DegenerateModelError, ShapeError
from easense.sampling import Trajectory

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EEMatrix:
    """r x k elementary effects, one row per kept trajectory."""

    values: np.ndarray
    dropped: int = 0

    @property
    def r(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class SobolIndices:
    S: np.ndarray
    ST: np.ndarray
    dropped: int = 0

    @property
    def S_clamped(self) -> np.ndarray:
        return np.clip(self.S, 0.0, 1.0)

    @property
    def ST_clamped(self) -> np.ndarray:
        return np.clip(self.ST, 0.0, 1.0)


class SensitivityReport(BaseModel):
    """Per-hyperparameter direct/interaction indices with their min-max normalization."""

    method: Literal["morris", "morris_lhs", "sobol"]
    params: List[str]
    direct: List[float]
    interaction: Optional[List[float]] = None
    direct_norm: List[float]
    interaction_norm: Optional[List[float]] = None
    ranking: List[int]
    gap: Optional[List[float]] = None
    norm_bounds: Dict[str, List[float]] = {}
    metric: Optional[str] = None
    problem: Optional[str] = None
    mu_star: Optional[List[float]] = None
    direct_clamped: Optional[List[float]] = None
    interaction_clamped: Optional[List[float]] = None
    dropped: int = 0

    def index_sums(self) -> List[float]:
        if self.interaction_norm is None:
            return list(self.direct_norm)
        return [d + i for d, i in zip(self.direct_norm, self.interaction_norm)]

    def ranked_names(self) -> List[str]:
        return [self.params[i] for i in self.ranking]

    def ordered_sums(self) -> List[Tuple[str, float]]:
        """Parameters with their normalized index sum, smallest first."""
        sums = self.index_sums()
        return sorted(((self.params[i], sums[i]) for i in range(len(sums))), key=lambda item: (item[1], item[0]))


def elementary_effects(traj: Trajectory, y: Sequence[float], delta: float) -> np.ndarray:
    """Forward-difference quotients along +Δ, one per dimension of the trajectory."""
    outputs = np.asarray(y, dtype=float)
    if outputs.shape != (traj.k + 1,):
        raise ShapeError(f"trajectory of k={traj.k} needs {traj.k + 1} outputs, got {outputs.shape}")
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not np.all(np.isfinite(outputs)):
        raise ValueError("elementary effects need finite outputs")
    ee = np.empty(traj.k)
    for j, (d, sign) in enumerate(zip(traj.moved_dim, traj.delta_signs)):
        ee[d] = sign * (outputs[j + 1] - outputs[j]) / delta
    return ee


def ee_matrix(trajectories: Sequence[Trajectory], outputs: Sequence[Sequence[float]], delta: float) -> EEMatrix:
    """Stack per-trajectory effects, dropping trajectories with non-finite outputs."""
    rows = []
    dropped = 0
    for traj, y in zip(trajectories, outputs):
        if not np.all(np.isfinite(np.asarray(y, dtype=float))):
            dropped += 1
            continue
        rows.append(elementary_effects(traj, y, delta))
    if dropped:
        logger.warning(f"dropped {dropped} of {len(trajectories)} trajectories with failed evaluations")
    k = trajectories[0].k if trajectories else 0
    values = np.array(rows) if rows else np.empty((0, k))
    return EEMatrix(values=values, dropped=dropped)


def morris_mu_sigma(ee: EEMatrix) -> Tuple[np.ndarray, Optional[np.ndarray], np.ndarray]:
    """Signed mean, sample standard deviation (absent for r=1) and mean |EE| per column."""
    if ee.r < 1:
        raise ValueError("no trajectories left to compute elementary-effect statistics")
    mu = ee.values.mean(axis=0)
    mu_star = np.abs(ee.values).mean(axis=0)
    sigma = ee.values.std(axis=0, ddof=1) if ee.r >= 2 else None
    return mu, sigma, mu_star


def sobol_indices(yA: Sequence[float], yB: Sequence[float], yC: Sequence[Sequence[float]],
                  estimator: str = "saltelli", metric: Optional[str] = None,
                  problem: Optional[str] = None) -> SobolIndices:
    """First-order and total-effect indices from the A, B and C_i output vectors.

    Rows with a non-finite output in any block are dropped from every block so
    the estimators stay paired.
    """
    a = np.asarray(yA, dtype=float)
    b = np.asarray(yB, dtype=float)
    c = np.asarray(yC, dtype=float)
    if c.ndim != 2 or a.shape != b.shape or c.shape[1] != a.shape[0]:
        raise ShapeError(f"inconsistent Sobol output shapes {a.shape}, {b.shape}, {c.shape}")
    keep = np.isfinite(a) & np.isfinite(b) & np.all(np.isfinite(c), axis=0)
    dropped = int((~keep).sum())
    if dropped:
        logger.warning(f"dropped {dropped} of {a.size} Sobol rows with failed evaluations")
    a, b, c = a[keep], b[keep], c[:, keep]
    if a.size < 2 or np.ptp(a) == 0.0:
        raise DegenerateModelError("model output over matrix A has zero variance", metric=metric, problem=problem)

    if estimator == "jansen":
        variance = np.var(np.concatenate([a, b]))
        S = 1.0 - np.mean((a - c) ** 2, axis=1) / (2.0 * variance)
        ST = np.mean((b - c) ** 2, axis=1) / (2.0 * variance)
    elif estimator == "saltelli":
        f0_sq = np.mean(a) ** 2
        variance = np.mean(a * a) - f0_sq
        if not variance > 0:
            raise DegenerateModelError("estimated output variance is not positive", metric=metric, problem=problem)
        S = (np.mean(a * c, axis=1) - f0_sq) / variance
        ST = 1.0 - (np.mean(b * c, axis=1) - f0_sq) / variance
    else:
        raise ValueError(f"unknown Sobol estimator {estimator!r}")
    return SobolIndices(S=S, ST=ST, dropped=dropped)


def _minmax(values: np.ndarray) -> Tuple[np.ndarray, List[float]]:
    lo, hi = float(np.min(values)), float(np.max(values))
    if hi - lo <= 0.0:
        return np.zeros_like(values, dtype=float), [lo, hi]
    return (values - lo) / (hi - lo), [lo, hi]


def build_report(method: str, params: Sequence[str], direct: Sequence[float],
                 interaction: Optional[Sequence[float]] = None, metric: Optional[str] = None,
                 problem: Optional[str] = None, mu_star: Optional[Sequence[float]] = None,
                 dropped: int = 0) -> SensitivityReport:
    """Normalize each index family into [0, 1] and rank by the normalized sum."""
    d = np.asarray(direct, dtype=float)
    if d.shape != (len(params),):
        raise ShapeError(f"{len(params)} params but {d.size} direct indices")
    if not np.all(np.isfinite(d)):
        raise ValueError("direct indices must be finite")
    d_norm, d_bounds = _minmax(d)
    bounds = {"direct": d_bounds}
    sums = d_norm.copy()
    fields = {}
    if interaction is not None:
        it = np.asarray(interaction, dtype=float)
        if it.shape != d.shape or not np.all(np.isfinite(it)):
            raise ValueError("interaction indices must be finite and match the direct indices")
        i_norm, bounds["interaction"] = _minmax(it)
        sums = sums + i_norm
        fields.update(interaction=it.tolist(), interaction_norm=i_norm.tolist(), gap=(it - d).tolist())
        if method == "sobol":
            fields.update(direct_clamped=np.clip(d, 0, 1).tolist(), interaction_clamped=np.clip(it, 0, 1).tolist())
    ranking = sorted(range(len(params)), key=lambda i: (-sums[i], i))
    return SensitivityReport(
        method=method, params=list(params), direct=d.tolist(), direct_norm=d_norm.tolist(),
        ranking=ranking, norm_bounds=bounds, metric=metric, problem=problem,
        mu_star=None if mu_star is None else [float(v) for v in mu_star], dropped=dropped, **fields,
    )


def morris_report(method: str, params: Sequence[str], trajectories: Sequence[Trajectory],
                  outputs: Sequence[Sequence[float]], delta: float, metric: Optional[str] = None,
                  problem: Optional[str] = None) -> SensitivityReport:
    ee = ee_matrix(trajectories, outputs, delta)
    mu, sigma, mu_star = morris_mu_sigma(ee)
    return build_report(method, params, mu, sigma, metric=metric, problem=problem,
                        mu_star=mu_star, dropped=ee.dropped)


def sobol_report(params: Sequence[str], yA, yB, yC, estimator: str = "saltelli",
                 metric: Optional[str] = None, problem: Optional[str] = None) -> SensitivityReport:
    result = sobol_indices(yA, yB, yC, estimator=estimator, metric=metric, problem=problem)
    return build_report("sobol", params, result.S, result.ST, metric=metric, problem=problem,
                        dropped=result.dropped)
