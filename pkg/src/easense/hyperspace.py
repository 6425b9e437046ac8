"""Hyperparameter domains and the p-level grid geometry the samplers work on."""
import math
from typing import Any, Dict, List, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from easense.errors import ConfigError, InvalidGridError, ShapeError

ConcreteConfig = Dict[str, Any]


class ParamSpec(BaseModel):
    """One tunable hyperparameter and its domain."""

    model_config = ConfigDict(frozen=True)

    name: str
    kind: Literal["continuous", "integer", "categorical", "boolean"]
    lower: Optional[float] = None
    upper: Optional[float] = None
    categories: Optional[List[Any]] = None

    @model_validator(mode="before")
    @classmethod
    def _default_labels(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("kind") == "boolean" and data.get("categories") is None:
            data = {**data, "categories": [False, True]}
        return data

    @model_validator(mode="after")
    def _check_domain(self) -> "ParamSpec":
        if self.kind in ("continuous", "integer"):
            if self.lower is None or self.upper is None:
                raise ValueError(f"{self.name}: {self.kind} parameter needs lower and upper")
            if not self.lower < self.upper:
                raise ValueError(f"{self.name}: lower must be < upper, got [{self.lower}, {self.upper}]")
            return self
        if self.kind == "boolean":
            if len(self.categories) != 2:
                raise ValueError(f"{self.name}: boolean parameter has exactly two labels")
        if not self.categories or len(self.categories) < 2:
            raise ValueError(f"{self.name}: categorical parameter needs at least 2 labels")
        if len(set(map(str, self.categories))) != len(self.categories):
            raise ValueError(f"{self.name}: category labels must be distinct")
        return self

    @property
    def is_categorical(self) -> bool:
        return self.kind in ("categorical", "boolean")

    @property
    def distinct_values(self) -> Optional[int]:
        """Number of values the parameter can decode to; None when continuous."""
        if self.is_categorical:
            return len(self.categories)
        if self.kind == "integer":
            return int(self.upper - self.lower) + 1
        return None

    @property
    def bin_domain(self) -> tuple:
        """Value range used when binning decoded values (label index for categories)."""
        if self.is_categorical:
            return 0.0, float(len(self.categories) - 1)
        return float(self.lower), float(self.upper)

    def decode_one(self, u: float) -> Any:
        if self.kind == "continuous":
            return self.lower + u * (self.upper - self.lower)
        if self.kind == "integer":
            value = math.floor(self.lower + u * (self.upper - self.lower) + 0.5)
            return int(min(max(value, self.lower), self.upper))
        m = len(self.categories)
        return self.categories[min(int(math.floor(u * m)), m - 1)]

    def encode_one(self, value: Any) -> float:
        if self.is_categorical:
            index = self.label_index(value)
            return (index + 0.5) / len(self.categories)
        return (float(value) - self.lower) / (self.upper - self.lower)

    def label_index(self, value: Any) -> int:
        for i, label in enumerate(self.categories):
            if label == value or str(label) == str(value):
                return i
        raise ConfigError(f"{self.name}: {value!r} is not one of {self.categories}")

    def numeric(self, value: Any) -> float:
        """Decoded value on a numeric axis (label index for categories)."""
        if self.is_categorical:
            return float(self.label_index(value))
        return float(value)


class HyperSpace(BaseModel):
    """Ordered hyperparameter space; the order fixes every sample matrix's columns."""

    model_config = ConfigDict(frozen=True)

    params: List[ParamSpec]

    @model_validator(mode="after")
    def _check_params(self) -> "HyperSpace":
        if not self.params:
            raise ValueError("a hyperparameter space needs at least one parameter")
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        return self

    @property
    def k(self) -> int:
        return len(self.params)

    @property
    def names(self) -> List[str]:
        return [p.name for p in self.params]

    def __iter__(self):
        return iter(self.params)

    def param(self, name: str) -> ParamSpec:
        for spec in self.params:
            if spec.name == name:
                return spec
        raise ConfigError(f"unknown hyperparameter {name!r}; space has {self.names}")

    def index_of(self, name: str) -> int:
        return self.names.index(self.param(name).name)


def grid_delta(p: int) -> float:
    """Morris step Δ = p / (2(p − 1)) for an even level count p."""
    if p < 2:
        raise InvalidGridError(f"a p-level grid needs p >= 2, got {p}")
    if p % 2:
        raise InvalidGridError(
            f"p={p} is odd: the step p/(2(p-1)) only lands on grid levels for even p"
        )
    return p / (2.0 * (p - 1))


def _as_unit(space: HyperSpace, u: Sequence[float]) -> np.ndarray:
    coords = np.asarray(u, dtype=float)
    if coords.shape != (space.k,):
        raise ShapeError(f"expected {space.k} unit coordinates, got shape {coords.shape}")
    return coords


def decode(space: HyperSpace, u: Sequence[float]) -> ConcreteConfig:
    """Map a unit-cube point onto the concrete hyperparameter domains."""
    coords = _as_unit(space, u)
    return {spec.name: spec.decode_one(float(np.clip(c, 0.0, 1.0))) for spec, c in zip(space, coords)}


def encode(space: HyperSpace, config: ConcreteConfig) -> np.ndarray:
    """Inverse of decode: affine inverse for numeric params, bin centre for labels."""
    missing = [name for name in space.names if name not in config]
    if missing:
        raise ShapeError(f"config lacks hyperparameters {missing}")
    return np.array([spec.encode_one(config[spec.name]) for spec in space])


def snap_to_grid(u: Sequence[float], p: int) -> np.ndarray:
    """Move every coordinate to its nearest level in {0, 1/(p-1), ..., 1}; ties round up."""
    if p < 2:
        raise InvalidGridError(f"a p-level grid needs p >= 2, got {p}")
    coords = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    levels = np.floor(coords * (p - 1) + 0.5)
    return np.clip(levels, 0, p - 1) / (p - 1)


def _continuous(name: str, lower: float, upper: float) -> ParamSpec:
    return ParamSpec(name=name, kind="continuous", lower=lower, upper=upper)


def _integer(name: str, lower: int, upper: int) -> ParamSpec:
    return ParamSpec(name=name, kind="integer", lower=lower, upper=upper)


def _moo_common() -> List[ParamSpec]:
    return [
        _integer("lambda", 10, 1000),
        _continuous("sbx_prob", 0.0, 1.0),
        _continuous("sbx_di", 1.0, 200.0),
        _continuous("pm_prob", 0.0, 1.0),
        _continuous("pm_di", 1.0, 200.0),
    ]


PRESETS: Dict[str, HyperSpace] = {
    "cmaes": HyperSpace(params=[
        _integer("lambda", 10, 1000),
        _continuous("alpha_mu", 0.0, 4.0),
        _continuous("sigma0", 0.1, 2.0),
        ParamSpec(name="sigma0_scale", kind="boolean"),
        _continuous("mu_lambda_ratio", 0.1, 1.0),
    ]),
    "de": HyperSpace(params=[
        _integer("lambda", 10, 1000),
        ParamSpec(name="crossover", kind="categorical", categories=["bin", "exp"]),
        _continuous("crossover_prob", 0.0, 1.0),
        _continuous("beta_min", 0.0, 1.0),
        _continuous("beta_max", 0.0, 2.0),
        ParamSpec(name="b_type", kind="categorical",
                  categories=["best", "target-to-best", "rand-to-best", "rand"]),
        _continuous("b_lambda_ratio", 0.01, 0.5),
    ]),
    "nsga3": HyperSpace(params=_moo_common() + [_integer("tournament_k", 2, 10)]),
    "moead": HyperSpace(params=_moo_common() + [
        ParamSpec(name="mode", kind="categorical",
                  categories=["PBI", "Tchebycheff", "Tchebycheff-normalized", "modified-Tchebycheff"]),
        _continuous("neighbor_ratio", 0.05, 0.5),
    ]),
}


def get_preset(name: str) -> HyperSpace:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown hyperspace preset {name!r}; choose from {sorted(PRESETS)}") from None


def resolve_space(value: Union[str, HyperSpace, List[Any]]) -> HyperSpace:
    """Accept a preset name, an inline parameter list, or a ready HyperSpace."""
    if isinstance(value, HyperSpace):
        return value
    if isinstance(value, str):
        return get_preset(value)
    return HyperSpace(params=[ParamSpec.model_validate(p) if isinstance(p, dict) else p for p in value])
