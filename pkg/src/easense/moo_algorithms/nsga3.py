"""NSGA-III with reference-point niching."""
import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist

from easense.errors import ConfigError
from easense.moo_algorithms.archive import ParetoArchive
from easense.moo_algorithms.configs import Nsga3Config
from easense.moo_algorithms.operators import (
    das_dennis_points,
    divisions_for,
    fast_nondominated_sort,
    polynomial_mutation,
    sbx,
)
from easense.problems import EvalDiagnostics, Problem

logger = logging.getLogger(__name__)


@dataclass
class MooRunResult:
    """Archive of every generation's population plus the final population."""

    archive: ParetoArchive
    population: np.ndarray
    objectives: np.ndarray
    evals_used: int
    diagnostics: EvalDiagnostics = field(default_factory=EvalDiagnostics)
    failed: bool = False

    @property
    def generations(self) -> int:
        return self.archive.generations


def check_budget(budget: int, lam: int) -> None:
    if budget < lam:
        raise ConfigError(f"budget {budget} is smaller than one generation of lambda={lam}")


def reference_points(m: int, lam: int) -> np.ndarray:
    """Full Das-Dennis lattice with the fewest divisions giving at least λ points."""
    return das_dennis_points(m, divisions_for(m, lam))


def normalize(F: np.ndarray, ideal: np.ndarray) -> np.ndarray:
    """Translate by the ideal point and divide by hyperplane intercepts.

    A singular or non-positive hyperplane falls back to the per-objective max.
    """
    t = F - ideal
    m = F.shape[1]
    weights = np.eye(m) + 1e-6
    extremes = [int(np.argmin(np.max(t / weights[i], axis=1))) for i in range(m)]
    fallback = np.max(t, axis=0)
    try:
        plane = np.linalg.solve(t[extremes], np.ones(m))
        intercepts = 1.0 / plane
        if not np.all(np.isfinite(intercepts)) or np.any(intercepts <= 1e-6):
            intercepts = fallback
    except np.linalg.LinAlgError:
        intercepts = fallback
    intercepts = np.where(intercepts > 1e-12, intercepts, 1.0)
    return t / intercepts


def associate(T: np.ndarray, refs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Nearest reference line per normalized point and the perpendicular distance to it."""
    with np.errstate(invalid="ignore", divide="ignore"):
        cosine = 1.0 - cdist(T, refs, "cosine")
    cosine = np.clip(np.nan_to_num(cosine, nan=1.0), -1.0, 1.0)
    norms = np.linalg.norm(T, axis=1, keepdims=True)
    distance = norms * np.sqrt(1.0 - cosine ** 2)
    return np.argmin(distance, axis=1), np.min(distance, axis=1)


def environmental_selection(F: np.ndarray, lam: int, refs: np.ndarray, ideal: np.ndarray,
                            rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pick λ survivors: whole fronts first, then niche-preserving picks from the split front.

    Returns the survivor indices, their front ranks and their niche counts.
    """
    fronts = fast_nondominated_sort(F)
    ranks = np.empty(len(F), dtype=int)
    for r, front in enumerate(fronts):
        ranks[front] = r
    chosen = []
    last = 0
    while last < len(fronts) and len(chosen) + len(fronts[last]) <= lam:
        chosen.extend(fronts[last].tolist())
        last += 1

    if len(chosen) < lam:
        split = fronts[last]
        candidates = np.array(chosen + split.tolist())
        T = normalize(F[candidates], ideal)
        assoc, dist = associate(T, refs)
        n_chosen = len(chosen)
        rho = np.bincount(assoc[:n_chosen], minlength=len(refs)).astype(float)
        open_refs = np.ones(len(refs), dtype=bool)
        taken = np.zeros(len(split), dtype=bool)
        remaining = lam - n_chosen
        while remaining:
            live = np.flatnonzero(open_refs)
            lowest = live[rho[live] == rho[live].min()]
            j = int(rng.choice(lowest))
            members = np.flatnonzero(~taken & (assoc[n_chosen:] == j))
            if members.size == 0:
                open_refs[j] = False
                continue
            if rho[j] == 0:
                pick = members[np.argmin(dist[n_chosen + members])]
            else:
                pick = members[rng.integers(members.size)]
            taken[pick] = True
            rho[j] += 1
            remaining -= 1
        chosen.extend(split[taken].tolist())

    survivors = np.array(chosen)
    assoc, _ = associate(normalize(F[survivors], ideal), refs)
    niche = np.bincount(assoc, minlength=len(refs))[assoc]
    return survivors, ranks[survivors], niche


def tournament(rng: np.random.Generator, count: int, size: int, ranks: np.ndarray,
               niche: np.ndarray) -> np.ndarray:
    """Winners of ``count`` tournaments of ``size`` distinct entrants; lower rank, then sparser niche."""
    pop = len(ranks)
    size = min(size, pop)
    winners = np.empty(count, dtype=int)
    for i in range(count):
        entrants = rng.choice(pop, size=size, replace=False)
        keys = np.lexsort((niche[entrants], ranks[entrants]))
        winners[i] = entrants[keys[0]]
    return winners


def make_offspring(pop: np.ndarray, parents: np.ndarray, problem: Problem, common,
                   rng: np.random.Generator, count: int) -> np.ndarray:
    half = (count + 1) // 2
    a, b = pop[parents[:half]], pop[parents[half:2 * half]]
    child_a, child_b = sbx(a, b, problem.lower, problem.upper, common.sbx_prob, common.sbx_di, rng)
    children = np.vstack([child_a, child_b])[:count]
    return polynomial_mutation(children, problem.lower, problem.upper, common.pm_prob, common.pm_di, rng)


def run_nsga3(problem: Problem, config: Nsga3Config, budget: int, seed: int) -> MooRunResult:
    common = config.common
    lam, m = common.lam, problem.objectives
    check_budget(budget, lam)
    rng = np.random.default_rng(seed)
    diagnostics = EvalDiagnostics()
    refs = reference_points(m, lam)
    archive = ParetoArchive(m)

    pop = problem.lower + rng.random((lam, problem.n)) * problem.width
    objs = problem.evaluate_batch(pop, diagnostics)
    evals = lam
    archive.add_generation(objs)
    ideal = objs.min(axis=0)
    ranks = np.empty(lam, dtype=int)
    for r, front in enumerate(fast_nondominated_sort(objs)):
        ranks[front] = r
    assoc, _ = associate(normalize(objs, ideal), refs)
    niche = np.bincount(assoc, minlength=len(refs))[assoc]

    while evals + lam <= budget:
        parents = tournament(rng, 2 * ((lam + 1) // 2), config.tournament_k, ranks, niche)
        offspring = make_offspring(pop, parents, problem, common, rng, lam)
        off_objs = problem.evaluate_batch(offspring, diagnostics)
        evals += lam
        ideal = np.minimum(ideal, off_objs.min(axis=0))
        merged = np.vstack([pop, offspring])
        merged_objs = np.vstack([objs, off_objs])
        survivors, ranks, niche = environmental_selection(merged_objs, lam, refs, ideal, rng)
        pop, objs = merged[survivors], merged_objs[survivors]
        archive.add_generation(objs)

    logger.debug(f"NSGA-III on {problem.name}: {archive.generations} generations, {evals} evaluations")
    return MooRunResult(archive=archive, population=pop, objectives=objs, evals_used=evals,
                        diagnostics=diagnostics)
