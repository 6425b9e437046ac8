from easense.moo_algorithms.archive import ParetoArchive
from easense.moo_algorithms.configs import MoeadConfig, MooCommonConfig, Nsga3Config
from easense.moo_algorithms.moead import run_moead
from easense.moo_algorithms.nsga3 import MooRunResult, run_nsga3
from easense.moo_algorithms.operators import (
    das_dennis_points,
    decompose,
    fast_nondominated_sort,
    polynomial_mutation,
    sbx,
)

__all__ = [
    "MoeadConfig",
    "MooCommonConfig",
    "MooRunResult",
    "Nsga3Config",
    "ParetoArchive",
    "das_dennis_points",
    "decompose",
    "fast_nondominated_sort",
    "polynomial_mutation",
    "run_moead",
    "run_nsga3",
    "sbx",
]
