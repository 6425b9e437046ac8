from typing import Any, Literal, Mapping

from pydantic import Field

from easense.config import AlgorithmConfig

COMMON_FIELDS = ("lambda", "lam", "sbx_prob", "sbx_di", "pm_prob", "pm_di")


class MooCommonConfig(AlgorithmConfig):
    """Population size and the SBX / polynomial-mutation settings shared by both MOEAs."""

    lam: int = Field(100, alias="lambda", ge=10, le=1000)
    sbx_prob: float = Field(1.0, ge=0.0, le=1.0)
    sbx_di: float = Field(20.0, ge=1.0, le=200.0)
    pm_prob: float = Field(0.1, ge=0.0, le=1.0)
    pm_di: float = Field(20.0, ge=1.0, le=200.0)


def _split(values: Mapping[str, Any]):
    common = {k: v for k, v in values.items() if k in COMMON_FIELDS}
    rest = {k: v for k, v in values.items() if k not in COMMON_FIELDS}
    return MooCommonConfig.from_values(common), rest


class Nsga3Config(AlgorithmConfig):
    common: MooCommonConfig = MooCommonConfig()
    tournament_k: int = Field(2, ge=2, le=10)

    @classmethod
    def from_values(cls, values: Mapping[str, Any]) -> "Nsga3Config":
        common, rest = _split(values)
        return cls.model_validate({"common": common, **rest})


class MoeadConfig(AlgorithmConfig):
    common: MooCommonConfig = MooCommonConfig()
    mode: Literal["PBI", "Tchebycheff", "Tchebycheff-normalized", "modified-Tchebycheff"] = "Tchebycheff"
    neighbor_ratio: float = Field(0.1, ge=0.05, le=0.5)
    theta: float = Field(5.0, gt=0.0)

    @classmethod
    def from_values(cls, values: Mapping[str, Any]) -> "MoeadConfig":
        common, rest = _split(values)
        return cls.model_validate({"common": common, **rest})
