"""Exception types raised by easense."""
from typing import Optional


class EasenseError(Exception):
    """Base class for every error raised by the library."""


class InvalidGridError(EasenseError, ValueError):
    """A p-level grid that Morris sampling cannot use."""


class ShapeError(EasenseError, ValueError):
    """Vector or matrix dimensions do not match the space or problem."""


class ConfigError(EasenseError, ValueError):
    """An experiment or algorithm configuration is not admissible."""


class PopulationTooSmallError(EasenseError, ValueError):
    """DE needs at least four distinct population members."""


class UndefinedMetricError(EasenseError, ValueError):
    """A performance metric was asked for on an empty front or reference set."""


class UnsupportedFrontError(EasenseError, ValueError):
    """The problem has no analytic Pareto front to sample from."""


class StoreCorruptedError(EasenseError):
    """The experiment store cannot be trusted for resuming."""


class UnknownProblemError(EasenseError, KeyError):
    """No benchmark problem is registered under the requested id."""


class DegenerateModelError(EasenseError, ValueError):
    """Model outputs have zero variance, so variance-based indices are undefined."""

    def __init__(self, message: str, metric: Optional[str] = None, problem: Optional[str] = None):
        self.metric = metric
        self.problem = problem
        where = ", ".join(f"{k}={v}" for k, v in (("metric", metric), ("problem", problem)) if v)
        super().__init__(f"{message} ({where})" if where else message)
