"""The Problem wrapper shared by the single- and multi-objective suites."""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from easense.errors import ShapeError, UnsupportedFrontError

logger = logging.getLogger(__name__)

BatchFunction = Callable[[np.ndarray], np.ndarray]
FrontSampler = Callable[[int], np.ndarray]


@dataclass
class EvalDiagnostics:
    """Per-run tally of evaluations and out-of-box points that were clamped."""

    evaluations: int = 0
    clamped: int = 0

    def merge(self, other: "EvalDiagnostics") -> None:
        self.evaluations += other.evaluations
        self.clamped += other.clamped


@dataclass(frozen=True, eq=False)
class Problem:
    """A box-bounded minimization problem with one or more objectives.

    ``function`` maps an (N, n) batch to (N,) values for one objective or
    (N, m) for several. Instances are immutable, so evaluation is reentrant.
    """

    name: str
    n: int
    lower: np.ndarray
    upper: np.ndarray
    function: BatchFunction
    objectives: int = 1
    group: str = "classic"
    optimum: Optional[float] = None
    noise: float = 0.0
    seed: Optional[int] = None
    front_sampler: Optional[FrontSampler] = None
    transform: Optional[Any] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_multiobjective(self) -> bool:
        return self.objectives > 1

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def clamp(self, X: np.ndarray, diagnostics: Optional[EvalDiagnostics] = None) -> np.ndarray:
        outside = np.any((X < self.lower) | (X > self.upper), axis=1)
        if diagnostics is not None:
            diagnostics.clamped += int(outside.sum())
        if outside.any():
            return np.clip(X, self.lower, self.upper)
        return X

    def evaluate_batch(self, X: np.ndarray, diagnostics: Optional[EvalDiagnostics] = None,
                       rng: Optional[np.random.Generator] = None) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n:
            raise ShapeError(f"{self.name} expects {self.n} decision variables, got {X.shape[1]}")
        X = self.clamp(X, diagnostics)
        values = self.function(X)
        if self.noise and rng is not None:
            values = values + self.noise * rng.random(values.shape[0])
        if diagnostics is not None:
            diagnostics.evaluations += X.shape[0]
        return values

    def sample_front(self, count: int) -> np.ndarray:
        if self.front_sampler is None:
            raise UnsupportedFrontError(f"{self.name} has no analytic Pareto front")
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        return self.front_sampler(count)

    def hv_reference(self, count: int = 91) -> np.ndarray:
        """Componentwise nadir of the analytic front scaled by 1.1."""
        return self.sample_front(count).max(axis=0) * 1.1

    def describe(self) -> Dict[str, Any]:
        entry = {
            "name": self.name,
            "group": self.group,
            "n": self.n,
            "objectives": self.objectives,
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
            "optimum": self.optimum,
            "seed": self.seed,
        }
        if self.noise:
            entry["noise"] = self.noise
        entry.update(self.extra)
        return entry


def box(n: int, lower: float, upper: float) -> tuple:
    return np.full(n, float(lower)), np.full(n, float(upper))


def evaluate_soo(problem: Problem, x, diagnostics: Optional[EvalDiagnostics] = None,
                 rng: Optional[np.random.Generator] = None) -> float:
    """Scalar objective of one decision vector; out-of-box inputs are clamped and counted."""
    if problem.is_multiobjective:
        raise ShapeError(f"{problem.name} has {problem.objectives} objectives; use evaluate_moo")
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.n,):
        raise ShapeError(f"{problem.name} expects a vector of length {problem.n}, got {x.shape}")
    return float(problem.evaluate_batch(x[None, :], diagnostics, rng)[0])


def evaluate_moo(problem: Problem, x, diagnostics: Optional[EvalDiagnostics] = None) -> np.ndarray:
    if not problem.is_multiobjective:
        raise ShapeError(f"{problem.name} is single-objective; use evaluate_soo")
    x = np.asarray(x, dtype=float)
    if x.shape != (problem.n,):
        raise ShapeError(f"{problem.name} expects a vector of length {problem.n}, got {x.shape}")
    return problem.evaluate_batch(x[None, :], diagnostics)[0]


def sample_true_front(problem: Problem, count: int) -> np.ndarray:
    return problem.sample_front(count)
