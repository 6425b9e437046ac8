"""Differential evolution and CMA-ES run to a fixed evaluation budget.

Both algorithms spend λ evaluations on their first generation and then only
whole generations, so ``evals_used`` lands in (budget - λ, budget].
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import Field

from easense.config import AlgorithmConfig
from easense.errors import ConfigError, PopulationTooSmallError, ShapeError
from easense.problems import EvalDiagnostics, Problem

logger = logging.getLogger(__name__)

EIGEN_FLOOR = 1e-12
MAX_CONSECUTIVE_REPAIRS = 10


class CmaesConfig(AlgorithmConfig):
    lam: int = Field(50, alias="lambda", ge=10, le=1000)
    alpha_mu: float = Field(1.0, ge=0.0, le=4.0)
    sigma0: float = Field(0.5, ge=0.1, le=2.0)
    sigma0_scale: bool = False
    mu_lambda_ratio: float = Field(0.5, ge=0.1, le=1.0)


class DeConfig(AlgorithmConfig):
    lam: int = Field(50, alias="lambda", ge=10, le=1000)
    crossover: Literal["bin", "exp"] = "bin"
    crossover_prob: float = Field(0.9, ge=0.0, le=1.0)
    beta_min: float = Field(0.2, ge=0.0, le=1.0)
    beta_max: float = Field(0.8, ge=0.0, le=2.0)
    b_type: Literal["best", "target-to-best", "rand-to-best", "rand"] = "rand"
    b_lambda_ratio: float = Field(0.1, ge=0.01, le=0.5)


@dataclass
class RunResult:
    """Outcome of one single-objective run."""

    best_value: float
    best_point: np.ndarray
    evals_used: int
    history: List[float]
    failed: bool = False
    repairs: int = 0
    diagnostics: EvalDiagnostics = field(default_factory=EvalDiagnostics)

    @property
    def generations(self) -> int:
        return len(self.history)


def _check_budget(budget: int, lam: int) -> None:
    if budget < lam:
        raise ConfigError(f"budget {budget} is smaller than one generation of lambda={lam}")


def de_donor(base: np.ndarray, x_r2: np.ndarray, x_r3: np.ndarray, beta) -> np.ndarray:
    """v = base + β (x_r2 - x_r3); works on single vectors or stacked rows."""
    base, x_r2, x_r3 = (np.asarray(v, dtype=float) for v in (base, x_r2, x_r3))
    if not base.shape == x_r2.shape == x_r3.shape:
        raise ShapeError(f"donor vectors differ in shape: {base.shape}, {x_r2.shape}, {x_r3.shape}")
    return base + beta * (x_r2 - x_r3)


def _distinct_partners(rng: np.random.Generator, lam: int) -> np.ndarray:
    """Three indices per target, all different from each other and from the target."""
    if lam < 4:
        raise PopulationTooSmallError(f"DE needs at least 4 population members, got {lam}")
    picks = np.empty((lam, 3), dtype=int)
    for target in range(lam):
        chosen = rng.choice(lam - 1, size=3, replace=False)
        picks[target] = chosen + (chosen >= target)
    return picks


def _crossover_mask(rng: np.random.Generator, kind: str, prob: float, lam: int, n: int) -> np.ndarray:
    """Donor-coordinate mask with at least one donor coordinate per row."""
    if kind == "bin":
        mask = rng.random((lam, n)) < prob
        mask[np.arange(lam), rng.integers(0, n, size=lam)] = True
        return mask
    start = rng.integers(0, n, size=lam)
    if n > 1:
        fails = rng.random((lam, n - 1)) >= prob
        length = 1 + np.where(fails.any(axis=1), fails.argmax(axis=1), n - 1)
    else:
        length = np.ones(lam, dtype=int)
    offset = (np.arange(n)[None, :] - start[:, None]) % n
    return offset < length[:, None]


def run_de(problem: Problem, config: DeConfig, budget: int, seed: int) -> RunResult:
    """Classic DE with the base vector chosen per ``b_type`` and greedy replacement."""
    lam, n = config.lam, problem.n
    _check_budget(budget, lam)
    rng = np.random.default_rng(seed)
    diagnostics = EvalDiagnostics()
    beta_hi = max(config.beta_min, config.beta_max)
    pool = max(1, math.ceil(config.b_lambda_ratio * lam))

    pop = problem.lower + rng.random((lam, n)) * problem.width
    fit = problem.evaluate_batch(pop, diagnostics, rng)
    evals = lam
    best = int(np.argmin(fit))
    best_value, best_point = float(fit[best]), pop[best].copy()
    history = [best_value]

    while evals + lam <= budget:
        beta = rng.uniform(config.beta_min, beta_hi)
        partners = _distinct_partners(rng, lam)
        x1, x2, x3 = pop[partners[:, 0]], pop[partners[:, 1]], pop[partners[:, 2]]
        top = np.argsort(fit, kind="stable")[:pool]
        x_best = pop[rng.choice(top, size=lam)]
        if config.b_type == "rand":
            base = x1
        elif config.b_type == "best":
            base = x_best
        elif config.b_type == "target-to-best":
            base = pop + beta * (x_best - pop)
        else:
            base = x1 + beta * (x_best - x1)
        donor = de_donor(base, x2, x3, beta)
        mask = _crossover_mask(rng, config.crossover, config.crossover_prob, lam, n)
        trial = np.clip(np.where(mask, donor, pop), problem.lower, problem.upper)
        trial_fit = problem.evaluate_batch(trial, diagnostics, rng)
        evals += lam
        improved = trial_fit <= fit
        pop[improved] = trial[improved]
        fit[improved] = trial_fit[improved]
        best = int(np.argmin(fit))
        if fit[best] < best_value:
            best_value, best_point = float(fit[best]), pop[best].copy()
        history.append(best_value)

    logger.debug(f"DE on {problem.name}: best {best_value:.6g} after {evals} evaluations")
    return RunResult(best_value=best_value, best_point=best_point, evals_used=evals,
                     history=history, diagnostics=diagnostics)


@dataclass(frozen=True)
class CmaesConstants:
    """Strategy parameters derived from n, λ and the tunable hyperparameters."""

    mu: int
    weights: np.ndarray
    mueff: float
    cc: float
    cs: float
    c1: float
    cmu: float
    damps: float
    chi_n: float

    @classmethod
    def derive(cls, n: int, config: CmaesConfig) -> "CmaesConstants":
        lam = config.lam
        mu = min(lam, max(1, math.ceil(config.mu_lambda_ratio * lam)))
        raw = math.log(mu + 0.5) - np.log(np.arange(1, mu + 1))
        weights = raw / raw.sum()
        mueff = 1.0 / float(np.sum(weights ** 2))
        cc = (4 + mueff / n) / (n + 4 + 2 * mueff / n)
        cs = (mueff + 2) / (n + mueff + 5)
        c1 = 2 / ((n + 1.3) ** 2 + mueff)
        cmu_default = min(1 - c1, 2 * (mueff - 2 + 1 / mueff) / ((n + 2) ** 2 + mueff))
        cmu = min(1 - c1, config.alpha_mu * cmu_default)
        damps = 1 + 2 * max(0.0, math.sqrt((mueff - 1) / (n + 1)) - 1) + cs
        chi_n = math.sqrt(n) * (1 - 1 / (4 * n) + 1 / (21 * n ** 2))
        return cls(mu=mu, weights=weights, mueff=mueff, cc=cc, cs=cs, c1=c1, cmu=cmu,
                   damps=damps, chi_n=chi_n)

    def to_manifest(self) -> Dict[str, float]:
        return {"mu": self.mu, "mueff": self.mueff, "cc": self.cc, "cs": self.cs, "c1": self.c1,
                "cmu": self.cmu, "damps": self.damps, "chi_n": self.chi_n}


def _eigen(C: np.ndarray):
    """Eigen-decomposition with eigenvalues clamped at EIGEN_FLOOR; returns (B, D, repaired)."""
    C = (C + C.T) / 2.0
    values, vectors = np.linalg.eigh(C)
    repaired = bool(np.any(values < EIGEN_FLOOR))
    values = np.maximum(values, EIGEN_FLOOR)
    return vectors, np.sqrt(values), repaired


def run_cmaes(problem: Problem, config: CmaesConfig, budget: int, seed: int,
              constants: Optional[CmaesConstants] = None) -> RunResult:
    """(μ/μ_w, λ) CMA-ES with the rank-μ rate scaled by ``alpha_mu``.

    Candidates outside the box are evaluated at their clamped image plus a
    squared-distance penalty for ranking; the reported best is the clamped
    point's true value.
    """
    lam, n = config.lam, problem.n
    _check_budget(budget, lam)
    cst = constants or CmaesConstants.derive(n, config)
    rng = np.random.default_rng(seed)
    diagnostics = EvalDiagnostics()

    mean = problem.lower + rng.random(n) * problem.width
    sigma = config.sigma0
    if config.sigma0_scale:
        C = np.diag((problem.width / 2.0) ** 2)
    else:
        C = np.eye(n)
    B, D, _ = _eigen(C)
    pc = np.zeros(n)
    ps = np.zeros(n)

    best_value, best_point = math.inf, mean.copy()
    history: List[float] = []
    evals = 0
    repairs = consecutive = 0
    failed = False
    generation = 0

    while evals + lam <= budget:
        generation += 1
        z = rng.standard_normal((lam, n))
        y = z @ (B * D).T
        x = mean + sigma * y
        clipped = np.clip(x, problem.lower, problem.upper)
        values = problem.evaluate_batch(clipped, diagnostics, rng)
        evals += lam
        ranked = values + np.sum((x - clipped) ** 2, axis=1)
        order = np.argsort(ranked, kind="stable")

        gen_best = int(np.argmin(values))
        if values[gen_best] < best_value:
            best_value, best_point = float(values[gen_best]), clipped[gen_best].copy()
        history.append(best_value)

        selected = y[order[:cst.mu]]
        yw = cst.weights @ selected
        mean = mean + sigma * yw

        inv_sqrt = (B / D) @ B.T
        ps = (1 - cst.cs) * ps + math.sqrt(cst.cs * (2 - cst.cs) * cst.mueff) * (inv_sqrt @ yw)
        ps_norm = float(np.linalg.norm(ps))
        hsig = ps_norm / math.sqrt(1 - (1 - cst.cs) ** (2 * generation)) / cst.chi_n < 1.4 + 2 / (n + 1)
        pc = (1 - cst.cc) * pc + hsig * math.sqrt(cst.cc * (2 - cst.cc) * cst.mueff) * yw
        rank_mu = (selected.T * cst.weights) @ selected
        C = ((1 - cst.c1 - cst.cmu) * C
             + cst.c1 * (np.outer(pc, pc) + (1 - hsig) * cst.cc * (2 - cst.cc) * C)
             + cst.cmu * rank_mu)
        sigma *= math.exp((cst.cs / cst.damps) * (ps_norm / cst.chi_n - 1))

        if not (np.all(np.isfinite(mean)) and np.all(np.isfinite(C)) and math.isfinite(sigma) and sigma > 0):
            logger.warning(f"CMA-ES on {problem.name}: non-finite state at generation {generation}; run failed")
            failed = True
            break
        B, D, repaired = _eigen(C)
        if repaired:
            repairs += 1
            consecutive += 1
            C = (B * D ** 2) @ B.T
            if consecutive >= MAX_CONSECUTIVE_REPAIRS:
                logger.warning(f"CMA-ES on {problem.name}: covariance repaired {consecutive} times in a row; run failed")
                failed = True
                break
        else:
            consecutive = 0

    if repairs:
        logger.warning(f"CMA-ES on {problem.name}: {repairs} eigenvalue repairs")
    return RunResult(best_value=best_value, best_point=best_point, evals_used=evals, history=history,
                     failed=failed, repairs=repairs, diagnostics=diagnostics)
