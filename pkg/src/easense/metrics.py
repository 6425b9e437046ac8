"""Performance metrics: best value for single-objective runs, GD/IGD/HV for fronts.

All multi-objective metrics assume minimization.
"""
import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel
from pymoo.indicators.hv import HV
from scipy.spatial.distance import cdist

from easense.errors import ShapeError, UndefinedMetricError
from easense.moo_algorithms import MooRunResult, ParetoArchive
from easense.problems import Problem
from easense.soo_algorithms import RunResult

logger = logging.getLogger(__name__)

ORIENTATION = {"best": "minimize", "gd": "minimize", "igd": "minimize", "hv": "maximize"}
REFERENCE_SET_SIZE = 91


class MetricValue(BaseModel):
    metric: Literal["best", "gd", "igd", "hv"]
    value: float
    orientation: Literal["minimize", "maximize"]

    @classmethod
    def of(cls, metric: str, value: float) -> "MetricValue":
        return cls(metric=metric, value=float(value), orientation=ORIENTATION[metric])


@dataclass(frozen=True)
class ReferenceData:
    """True-front sample and HV reference point of one problem."""

    front: np.ndarray
    hv_reference: np.ndarray

    @classmethod
    def for_problem(cls, problem: Problem, count: int = REFERENCE_SET_SIZE) -> "ReferenceData":
        return cls(front=problem.sample_front(count), hv_reference=problem.hv_reference(count))


def _pair(A, Z) -> Tuple[np.ndarray, np.ndarray]:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    if A.size == 0 or Z.size == 0:
        raise UndefinedMetricError("distance metrics need non-empty front and reference sets")
    if A.shape[1] != Z.shape[1]:
        raise ShapeError(f"front has {A.shape[1]} objectives but reference has {Z.shape[1]}")
    return A, Z


def gd(A, Z) -> float:
    """Generational distance sqrt(sum of squared nearest distances) / |A|."""
    A, Z = _pair(A, Z)
    d = cdist(A, Z).min(axis=1)
    return float(np.sqrt(np.sum(d ** 2)) / A.shape[0])


def igd(A, Z) -> float:
    """Mean distance from each reference point to its nearest front point."""
    A, Z = _pair(A, Z)
    return float(cdist(Z, A).min(axis=1).mean())


def hv(A, r) -> float:
    """Exact hypervolume of the region dominated by A and bounded by r."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    r = np.asarray(r, dtype=float)
    if A.size == 0:
        return 0.0
    if A.shape[1] != r.shape[0]:
        raise ShapeError(f"front has {A.shape[1]} objectives but reference point has {r.shape[0]}")
    if np.any(r <= A.min(axis=0)):
        logger.warning(f"HV reference {r.tolist()} does not exceed the front minimum in every objective")
    counted = A[np.all(A < r, axis=1)]
    if counted.shape[0] == 0:
        return 0.0
    indicator = HV(ref_point=r)
    return float(indicator(np.unique(counted, axis=0)))


def hv_monte_carlo(A, r, samples: int = 1_000_000, seed: int = 0,
                   chunk: int = 100_000) -> Tuple[float, float]:
    """Monte-Carlo hypervolume estimate and its standard error."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    r = np.asarray(r, dtype=float)
    counted = A[np.all(A < r, axis=1)] if A.size else A
    if counted.shape[0] == 0:
        return 0.0, 0.0
    low = counted.min(axis=0)
    box = float(np.prod(r - low))
    rng = np.random.default_rng(seed)
    hits = 0
    drawn = 0
    while drawn < samples:
        size = min(chunk, samples - drawn)
        u = low + rng.random((size, len(r))) * (r - low)
        dominated = np.zeros(size, dtype=bool)
        for point in counted:
            dominated |= np.all(point <= u, axis=1)
        hits += int(dominated.sum())
        drawn += size
    p = hits / samples
    return box * p, box * np.sqrt(p * (1.0 - p) / samples)


def score_run(result: Union[RunResult, MooRunResult, ParetoArchive], metric: str,
              reference: Optional[ReferenceData] = None) -> MetricValue:
    """Score one run; MOO metrics use the non-dominated union of all generations."""
    if metric == "best":
        if not isinstance(result, RunResult):
            raise UndefinedMetricError("the best-value metric needs a single-objective run result")
        return MetricValue.of("best", min(result.history) if result.history else result.best_value)
    if metric not in ORIENTATION:
        raise UndefinedMetricError(f"unknown metric {metric!r}")
    archive = result.archive if isinstance(result, MooRunResult) else result
    if not isinstance(archive, ParetoArchive):
        raise UndefinedMetricError(f"{metric} needs a multi-objective archive")
    if reference is None:
        raise UndefinedMetricError(f"{metric} needs the problem's reference data")
    front = archive.nondominated()
    if metric == "gd":
        return MetricValue.of("gd", gd(front, reference.front))
    if metric == "igd":
        return MetricValue.of("igd", igd(front, reference.front))
    return MetricValue.of("hv", hv(front, reference.hv_reference))


def average_runs(values: Sequence[float]) -> Tuple[float, int]:
    """Arithmetic mean over the finite run values and the number of failed (non-finite) runs."""
    arr = np.asarray(values, dtype=float)
    finite = np.isfinite(arr)
    failures = int((~finite).sum())
    if not finite.any():
        return float("nan"), failures
    return float(arr[finite].mean()), failures
