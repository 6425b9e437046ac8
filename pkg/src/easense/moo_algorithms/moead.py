"""MOEA/D with Tchebycheff-family or PBI decomposition."""
import logging

import numpy as np
from scipy.spatial.distance import cdist

from easense.moo_algorithms.archive import ParetoArchive
from easense.moo_algorithms.configs import MoeadConfig
from easense.moo_algorithms.nsga3 import MooRunResult, check_budget
from easense.moo_algorithms.operators import decompose, polynomial_mutation, sbx, simplex_points
from easense.problems import EvalDiagnostics, Problem

logger = logging.getLogger(__name__)


def neighborhood_size(ratio: float, population: int) -> int:
    """T = max(2, round-half-up(ratio * N)), capped at N."""
    return min(population, max(2, int(np.floor(ratio * population + 0.5))))


def neighborhoods(weights: np.ndarray, size: int) -> np.ndarray:
    """Indices of the ``size`` closest weight vectors (self first) for every subproblem."""
    distance = cdist(weights, weights)
    return np.argsort(distance, axis=1, kind="stable")[:, :size]


def run_moead(problem: Problem, config: MoeadConfig, budget: int, seed: int) -> MooRunResult:
    """Each generation visits every subproblem once; replacement is not capped."""
    common = config.common
    lam, m = common.lam, problem.objectives
    check_budget(budget, lam)
    rng = np.random.default_rng(seed)
    diagnostics = EvalDiagnostics()
    weights = simplex_points(m, lam)
    hood = neighborhoods(weights, neighborhood_size(config.neighbor_ratio, lam))
    archive = ParetoArchive(m)

    pop = problem.lower + rng.random((lam, problem.n)) * problem.width
    objs = problem.evaluate_batch(pop, diagnostics)
    evals = lam
    archive.add_generation(objs)
    ideal = objs.min(axis=0)
    nadir = objs.max(axis=0)

    while evals + lam <= budget:
        for i in rng.permutation(lam):
            k, l = rng.choice(hood[i], size=2, replace=False)
            child, _ = sbx(pop[k][None, :], pop[l][None, :], problem.lower, problem.upper,
                           common.sbx_prob, common.sbx_di, rng)
            child = polynomial_mutation(child, problem.lower, problem.upper, common.pm_prob, common.pm_di, rng)
            f_child = problem.evaluate_batch(child, diagnostics)[0]
            evals += 1
            ideal = np.minimum(ideal, f_child)
            nb = hood[i]
            old = decompose(objs[nb], weights[nb], ideal, config.mode, config.theta, nadir)
            new = decompose(f_child[None, :], weights[nb], ideal, config.mode, config.theta, nadir)
            better = nb[new <= old]
            pop[better] = child[0]
            objs[better] = f_child
        nadir = objs.max(axis=0)
        archive.add_generation(objs)

    logger.debug(f"MOEA/D ({config.mode}) on {problem.name}: {archive.generations} generations, {evals} evaluations")
    return MooRunResult(archive=archive, population=pop, objectives=objs, evals_used=evals,
                        diagnostics=diagnostics)
