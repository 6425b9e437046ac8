"""String-addressable problem registry and the named suites.

Ids: ``sphere``, ``sphere_n10``, ``shifted_ackley``, ``rotated_rastrigin_n10``,
``dtlz2``, ``dtlz2_m3_n10``.
"""
import logging
import re
from functools import lru_cache
from typing import Any, Dict, List, Sequence

from easense.errors import UnknownProblemError
from easense.problems.base import Problem
from easense.problems.moo import FAMILIES, make_moo
from easense.problems.soo import CEC, CEC_SEED, CLASSIC, make_cec, make_classic

logger = logging.getLogger(__name__)

_SOO_ID = re.compile(r"^(?P<name>[a-z0-9_]+?)(?:_n(?P<n>\d+))?$")
_MOO_ID = re.compile(r"^(?P<name>[a-z]+\d)(?:_m(?P<m>\d+)_n(?P<n>\d+))?$")

CLASSIC23: List[str] = list(CLASSIC)
CEC10: List[str] = list(CEC)
SOO33: List[str] = CLASSIC23 + CEC10
MOO10: List[str] = list(FAMILIES)

SUITES: Dict[str, List[str]] = {
    "classic23": CLASSIC23,
    "cec10": CEC10,
    "soo33": SOO33,
    "moo10": MOO10,
}


@lru_cache(maxsize=None)
def get_problem(problem_id: str, seed: int = CEC_SEED) -> Problem:
    """Build (once per process) the problem named by ``problem_id``."""
    moo = _MOO_ID.match(problem_id)
    if moo and moo.group("name") in FAMILIES:
        m = int(moo.group("m")) if moo.group("m") else None
        n = int(moo.group("n")) if moo.group("n") else None
        return make_moo(moo.group("name"), m=m, n=n)
    soo = _SOO_ID.match(problem_id)
    if soo:
        name = soo.group("name")
        n = int(soo.group("n")) if soo.group("n") else None
        if name in CLASSIC:
            return make_classic(name, n)
        if name in CEC:
            return make_cec(name, n, seed=seed)
    raise UnknownProblemError(f"unknown problem id {problem_id!r}")


def expand_problems(ids: Sequence[str]) -> List[str]:
    """Replace suite aliases by their members, keeping first occurrences only."""
    expanded: List[str] = []
    for problem_id in ids:
        members = SUITES.get(problem_id, [problem_id])
        for member in members:
            if member not in expanded:
                expanded.append(member)
    return expanded


def list_problems(suite: str = "all") -> List[str]:
    if suite == "all":
        return SOO33 + MOO10
    try:
        return list(SUITES[suite])
    except KeyError:
        raise UnknownProblemError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}") from None


def problem_manifest(ids: Sequence[str], seed: int = CEC_SEED) -> List[Dict[str, Any]]:
    """One JSON-ready entry per problem: n, bounds, seed, optimum and HV reference for MOO."""
    entries = []
    for problem_id in ids:
        problem = get_problem(problem_id, seed)
        entry = problem.describe()
        entry["id"] = problem_id
        if problem.is_multiobjective:
            entry["hv_reference"] = problem.hv_reference().tolist()
        entries.append(entry)
    return entries
