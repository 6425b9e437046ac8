from easense.problems.base import EvalDiagnostics, Problem, evaluate_moo, evaluate_soo, sample_true_front
from easense.problems.registry import (
    CEC10,
    CLASSIC23,
    MOO10,
    SOO33,
    expand_problems,
    get_problem,
    list_problems,
    problem_manifest,
)
from easense.problems.transforms import ShiftRotate, make_shift_rotate

__all__ = [
    "CEC10",
    "CLASSIC23",
    "EvalDiagnostics",
    "MOO10",
    "Problem",
    "SOO33",
    "ShiftRotate",
    "evaluate_moo",
    "evaluate_soo",
    "expand_problems",
    "get_problem",
    "list_problems",
    "make_shift_rotate",
    "problem_manifest",
    "sample_true_front",
]
