"""Hyperparameter sensitivity analysis for evolutionary algorithms."""

from easense.config import ExperimentConfig, config_from_dict, load_config
from easense.errors import EasenseError
from easense.hyperspace import PRESETS, HyperSpace, ParamSpec, decode, encode
from easense.indices import SensitivityReport
from easense.problems import get_problem, list_problems
from easense.runner import ExperimentResult, run_experiment
from easense.sampling import build_plan

__version__ = "0.1.0"

__all__ = [
    "EasenseError",
    "ExperimentConfig",
    "ExperimentResult",
    "HyperSpace",
    "PRESETS",
    "ParamSpec",
    "SensitivityReport",
    "build_plan",
    "config_from_dict",
    "decode",
    "encode",
    "get_problem",
    "list_problems",
    "load_config",
    "run_experiment",
]
