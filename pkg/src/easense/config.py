"""Experiment configuration documents and the shared base for algorithm configs."""
import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from easense.errors import ConfigError, UnknownProblemError
from easense.hyperspace import HyperSpace, ParamSpec, resolve_space
from easense.problems import expand_problems, get_problem
from easense.problems.soo import CEC_SEED

logger = logging.getLogger(__name__)

SOO_ALGORITHMS = ("cmaes", "de")
MOO_ALGORITHMS = ("nsga3", "moead")
SOO_METRICS = ("best",)
MOO_METRICS = ("gd", "igd", "hv")
SOO_BINNING = (50, 2.0)
MOO_BINNING = (20, 0.99)
MIN_BUDGET = 10

ENV_OUTPUT_DIR = "EASENSE_OUTPUT_DIR"
ENV_PARALLELISM = "EASENSE_PARALLELISM"


class AlgorithmConfig(BaseModel):
    """Base for the per-algorithm hyperparameter models; ``lambda`` is aliased to ``lam``."""

    model_config = ConfigDict(populate_by_name=True, frozen=True, extra="forbid")

    @classmethod
    def from_values(cls, values: Mapping[str, Any]):
        """Build from decoded hyperparameter values keyed as in the presets."""
        return cls.model_validate(dict(values))


class ExperimentConfig(BaseModel):
    """One sensitivity experiment: algorithm, space, sampling plan and testbench."""

    model_config = ConfigDict(extra="forbid")

    algorithm: Literal["cmaes", "de", "nsga3", "moead"]
    hyperspace: Optional[Union[str, List[ParamSpec]]] = None
    method: Literal["morris", "morris_lhs", "sobol"] = "morris"
    r: int = Field(50, ge=1)
    p: int = Field(10, ge=2)
    n: int = Field(100, ge=2)
    problems: Optional[List[str]] = None
    runs: int = Field(10, ge=1)
    budget: int = Field(10_000, ge=MIN_BUDGET)
    metrics: Optional[List[Literal["best", "gd", "igd", "hv"]]] = None
    seed: int = 0
    problem_seed: int = CEC_SEED
    parallelism: int = Field(1, ge=1)
    output_dir: str = "experiments/latest"
    aggregation: Literal["minmax", "rank"] = "minmax"
    sobol_estimator: Literal["saltelli", "jansen"] = "saltelli"
    low_discrepancy: bool = False
    bins: Optional[int] = Field(None, ge=2)
    sigma: Optional[float] = Field(None, ge=0.0)

    @property
    def is_multiobjective(self) -> bool:
        return self.algorithm in MOO_ALGORITHMS

    @property
    def space(self) -> HyperSpace:
        return resolve_space(self.hyperspace if self.hyperspace is not None else self.algorithm)

    @property
    def problem_ids(self) -> List[str]:
        default = "moo10" if self.is_multiobjective else "soo33"
        return expand_problems(self.problems or [default])

    @property
    def metric_names(self) -> List[str]:
        if self.metrics:
            return list(dict.fromkeys(self.metrics))
        return list(MOO_METRICS if self.is_multiobjective else SOO_METRICS)

    def binning(self) -> Tuple[int, float]:
        bins, sigma = MOO_BINNING if self.is_multiobjective else SOO_BINNING
        return self.bins or bins, sigma if self.sigma is None else self.sigma

    def check(self) -> "ExperimentConfig":
        """Semantic checks pydantic cannot express; raises ConfigError."""
        if self.method != "sobol" and self.p % 2:
            raise ConfigError(f"p={self.p} must be even for Morris sampling")
        allowed = MOO_METRICS if self.is_multiobjective else SOO_METRICS
        wrong = [m for m in self.metric_names if m not in allowed]
        if wrong:
            raise ConfigError(f"metrics {wrong} do not apply to {self.algorithm}; use {list(allowed)}")
        for problem_id in self.problem_ids:
            try:
                problem = get_problem(problem_id, self.problem_seed)
            except UnknownProblemError as e:
                raise ConfigError(str(e)) from None
            if problem.is_multiobjective != self.is_multiobjective:
                kind = "multi" if problem.is_multiobjective else "single"
                raise ConfigError(f"{problem_id} is {kind}-objective and cannot be solved by {self.algorithm}")
        space = self.space
        logger.debug(f"checked {self.algorithm} config: k={space.k}, {len(self.problem_ids)} problems")
        return self

    def fingerprint(self) -> str:
        """Hash of every field that changes results (not output location or parallelism)."""
        payload = self.model_dump(mode="json", exclude={"output_dir", "parallelism"})
        payload["problems"] = self.problem_ids
        payload["metrics"] = self.metric_names
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def config_from_dict(data: Dict[str, Any], apply_env: bool = True) -> ExperimentConfig:
    data = dict(data)
    if apply_env:
        if os.environ.get(ENV_OUTPUT_DIR):
            data["output_dir"] = os.environ[ENV_OUTPUT_DIR]
        if os.environ.get(ENV_PARALLELISM):
            try:
                data["parallelism"] = int(os.environ[ENV_PARALLELISM])
            except ValueError:
                raise ConfigError(f"{ENV_PARALLELISM} must be an integer, got {os.environ[ENV_PARALLELISM]!r}") from None
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise ConfigError(f"invalid config at {where or '<root>'}: {first['msg']}") from e
    return config.check()


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read a JSON config document and apply the environment overrides."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a JSON object")
    config = config_from_dict(data)
    logger.info(f"Loaded {config.algorithm}/{config.method} config from {path}")
    return config
