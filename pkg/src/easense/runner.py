"""Experiment orchestration: plan, evaluate every cell, aggregate, index, rank and bin."""
import json
import logging
import os
import warnings
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel
from scipy.ndimage import gaussian_filter1d
from scipy.stats import rankdata

from easense import analysis
from easense.config import ExperimentConfig, MOO_ALGORITHMS
from easense.errors import DegenerateModelError
from easense.hyperspace import HyperSpace, ParamSpec, decode, grid_delta
from easense.indices import SensitivityReport, morris_report, sobol_report
from easense.metrics import ORIENTATION, REFERENCE_SET_SIZE, ReferenceData, average_runs, score_run
from easense.moo_algorithms import MoeadConfig, Nsga3Config, run_moead, run_nsga3
from easense.problems import get_problem, problem_manifest
from easense.sampling import SamplePlan, build_plan
from easense.soo_algorithms import CmaesConfig, CmaesConstants, DeConfig, run_cmaes, run_de
from easense.store import (
    CLUSTERS,
    EVALS,
    RANKING,
    SAMPLES,
    TTESTS,
    ExperimentStore,
)

logger = logging.getLogger(__name__)

BATCH_CELLS = 64

DECISIONS = {
    "score_orientation": "per-problem scores are rescaled across samples so 1 is the best observed value",
    "aggregation": "model output Y is the mean over problems of the normalized per-problem run means "
                   "(minmax, or rank with aggregation=rank)",
    "cell_seed": "SeedSequence([master seed, sample id, crc32(problem id), run index])",
    "failed_runs": "runs that diverge or raise are journaled as NaN and excluded from the run mean",
    "morris_direct": "signed mean of elementary effects; mean |EE| reported as mu_star",
    "morris_dropping": "a trajectory with any non-finite output is dropped",
    "sobol_dropping": "a row index with any non-finite output is dropped from A, B and every C_i",
    "sobol_estimator": "dot-product form by default, Jansen on request",
    "normalization": "min-max per (method, metric, algorithm) report, bounds recorded in the report",
    "hv_reference": "analytic front nadir x 1.1 per problem",
    "reference_set": f"{REFERENCE_SET_SIZE} true-front points for GD/IGD",
    "archive": "MOO metrics use the exact-duplicate-free first front of every generation's population",
    "gd_form": "sqrt(sum d^2) / |A|",
    "ttest": "pooled-variance, two-sided",
    "budget": "whole generations only; evaluations used never exceed the budget",
}


class CellTask(NamedTuple):
    algorithm: str
    values: Dict[str, Any]
    problem_id: str
    problem_seed: int
    sample_id: int
    run: int
    seed: int
    budget: int
    metrics: Tuple[str, ...]


class EvalRecord(BaseModel):
    """Run-averaged result of one (sample, problem, metric) cell."""

    sample_id: int
    values: Dict[str, Any]
    problem: str
    metric: str
    mean: float
    run_values: List[float]
    failures: int = 0
    score: Optional[float] = None


class BinnedCurve(BaseModel):
    param: str
    metric: Optional[str] = None
    bins: int
    edges: List[float]
    counts: List[int]
    means: List[float]
    smoothed: List[float]
    sigma: float
    interpolated: List[int] = []


class RankingTable(BaseModel):
    """Per-report rankings and the Borda-count consolidation across them."""

    params: List[str]
    rankings: Dict[str, List[str]]
    ordered_sums: Dict[str, List[Tuple[str, float]]]
    borda: Dict[str, int]
    consolidated: List[str]


@dataclass
class ExperimentResult:
    output_dir: str
    plan: SamplePlan
    records: List[EvalRecord]
    reports: Dict[str, SensitivityReport] = field(default_factory=dict)
    problem_reports: Dict[str, Dict[str, SensitivityReport]] = field(default_factory=dict)
    ranking: Optional[RankingTable] = None
    executed_cells: int = 0
    resumed_cells: int = 0
    failures: int = 0


def cell_seed(master: int, sample_id: int, problem_id: str, run: int) -> int:
    sequence = np.random.SeedSequence([master, sample_id, zlib.crc32(problem_id.encode()), run])
    return int(sequence.generate_state(1)[0])


@lru_cache(maxsize=None)
def _reference(problem_id: str, problem_seed: int) -> ReferenceData:
    return ReferenceData.for_problem(get_problem(problem_id, problem_seed))


def solve(algorithm: str, values: Dict[str, Any], problem_id: str, problem_seed: int,
          budget: int, seed: int):
    """Run one algorithm configuration once on one problem."""
    problem = get_problem(problem_id, problem_seed)
    if algorithm == "de":
        return run_de(problem, DeConfig.from_values(values), budget, seed)
    if algorithm == "cmaes":
        return run_cmaes(problem, CmaesConfig.from_values(values), budget, seed)
    if algorithm == "nsga3":
        return run_nsga3(problem, Nsga3Config.from_values(values), budget, seed)
    if algorithm == "moead":
        return run_moead(problem, MoeadConfig.from_values(values), budget, seed)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def evaluate_cell(task: CellTask) -> List[list]:
    """Journal rows for one cell; a failing run yields NaN rows instead of raising."""
    try:
        result = solve(task.algorithm, task.values, task.problem_id, task.problem_seed, task.budget, task.seed)
        rows = []
        for metric in task.metrics:
            reference = None if metric == "best" else _reference(task.problem_id, task.problem_seed)
            value = float("nan") if result.failed else score_run(result, metric, reference).value
            rows.append([task.sample_id, task.problem_id, task.run, metric, value, result.evals_used,
                         bool(result.failed)])
        if result.failed:
            logger.debug(f"sample {task.sample_id} run {task.run} failed on {task.problem_id}")
        return rows
    except Exception as e:
        logger.warning(f"sample {task.sample_id} run {task.run} on {task.problem_id} raised: {e}")
        return [[task.sample_id, task.problem_id, task.run, metric, float("nan"), 0, True]
                for metric in task.metrics]


def _execute(tasks: Sequence[CellTask], parallelism: int) -> Iterator[List[list]]:
    if parallelism <= 1:
        yield from map(evaluate_cell, tasks)
        return
    chunk = max(1, min(BATCH_CELLS, len(tasks) // (4 * parallelism) or 1))
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        yield from pool.map(evaluate_cell, tasks, chunksize=chunk)


def build_manifest(config: ExperimentConfig, space: HyperSpace, plan: SamplePlan) -> Dict[str, Any]:
    ids = config.problem_ids
    manifest = {
        "config": config.model_dump(mode="json"),
        "fingerprint": config.fingerprint(),
        "seeds": {"master": config.seed, "problem": config.problem_seed, "cell": DECISIONS["cell_seed"]},
        "decisions": DECISIONS,
        "hyperspace": space.model_dump(mode="json"),
        "problems": problem_manifest(ids, config.problem_seed),
        "plan": {"method": plan.method, "total_points": plan.total_points, "k": plan.k},
        "cells": plan.total_points * len(ids) * config.runs,
    }
    if config.algorithm in MOO_ALGORITHMS:
        manifest["reference_set_size"] = REFERENCE_SET_SIZE
    if config.algorithm == "cmaes":
        dims = sorted({get_problem(pid, config.problem_seed).n for pid in ids})
        manifest["cmaes_constants"] = {str(n): CmaesConstants.derive(n, CmaesConfig()).to_manifest() for n in dims}
    return manifest


def _sample_values(space: HyperSpace, plan: SamplePlan) -> List[Dict[str, Any]]:
    return [decode(space, u) for u in plan.points]


def _write_samples(store: ExperimentStore, space: HyperSpace, plan: SamplePlan,
                   values: List[Dict[str, Any]]) -> None:
    header = ["sample_id", "block"] + [f"u_{name}" for name in space.names] + space.names
    rows = []
    for sample_id, (block, u, decoded) in enumerate(zip(plan.block_labels(), plan.points, values)):
        rows.append([sample_id, block] + [float(c) for c in u] + [decoded[name] for name in space.names])
    store.write_csv(SAMPLES, header, rows)


def collect_records(runs: Iterable[Dict[str, Any]], values: List[Dict[str, Any]], problem_ids: Sequence[str],
                    metrics: Sequence[str], runs_per_cell: int) -> List[EvalRecord]:
    """Group journal rows into run-averaged records ordered by sample, problem and metric."""
    cells: Dict[Tuple[int, str, str], Dict[int, float]] = {}
    for row in runs:
        per_run = cells.setdefault((row["sample_id"], row["problem"], row["metric"]), {})
        per_run.setdefault(row["run"], row["value"])
    records = []
    for sample_id, decoded in enumerate(values):
        for problem_id in sorted(problem_ids):
            for metric in metrics:
                per_run = cells.get((sample_id, problem_id, metric), {})
                run_values = [per_run.get(run, float("nan")) for run in range(runs_per_cell)]
                mean, failures = average_runs(run_values)
                records.append(EvalRecord(sample_id=sample_id, values=decoded, problem=problem_id,
                                          metric=metric, mean=mean, run_values=run_values, failures=failures))
    return records


def normalize_scores(matrix: np.ndarray, orientation: str, aggregation: str = "minmax",
                     labels: Optional[Sequence[str]] = None) -> np.ndarray:
    """Rescale every column (problem) across rows (samples) so 1 is best; NaN stays NaN."""
    out = np.full(matrix.shape, np.nan)
    for j in range(matrix.shape[1]):
        column = matrix[:, j]
        finite = np.isfinite(column)
        if not finite.any():
            continue
        oriented = column[finite] if orientation == "maximize" else -column[finite]
        if aggregation == "rank":
            count = oriented.size
            ranks = rankdata(oriented)
            out[finite, j] = (ranks - 1.0) / (count - 1.0) if count > 1 else 0.0
            continue
        lo, hi = oriented.min(), oriented.max()
        if hi - lo <= 0.0:
            name = labels[j] if labels is not None else j
            logger.warning(f"scores on {name} are constant across samples; normalized to 0")
            out[finite, j] = 0.0
        else:
            out[finite, j] = (oriented - lo) / (hi - lo)
    return out


def _score_matrix(records: Sequence[EvalRecord], metric: str, samples: int,
                  problem_ids: Sequence[str]) -> np.ndarray:
    column = {pid: j for j, pid in enumerate(problem_ids)}
    matrix = np.full((samples, len(problem_ids)), np.nan)
    for record in records:
        if record.metric == metric:
            matrix[record.sample_id, column[record.problem]] = record.mean
    return matrix


def model_output(normalized: np.ndarray) -> np.ndarray:
    """Mean over problems per sample; samples without any finite score give NaN."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=RuntimeWarning)
        return np.nanmean(normalized, axis=1)


def compute_report(plan: SamplePlan, space: HyperSpace, y: np.ndarray, metric: str,
                   estimator: str = "saltelli", problem: Optional[str] = None) -> SensitivityReport:
    names = space.names
    if plan.method == "sobol":
        n = plan.n
        return sobol_report(names, y[:n], y[n:2 * n], y[2 * n:].reshape(plan.k, n), estimator=estimator,
                            metric=metric, problem=problem)
    outputs = y.reshape(len(plan.trajectories), plan.k + 1)
    return morris_report(plan.method, names, plan.trajectories, outputs, grid_delta(plan.p),
                         metric=metric, problem=problem)


def bin_scores(records: Sequence[EvalRecord], spec: ParamSpec, bins: int, sigma: float,
               metric: Optional[str] = None) -> BinnedCurve:
    """Mean normalized score per equal-width bin of one hyperparameter, then Gaussian smoothing.

    Scores are first averaged across problems per sample. Categorical and
    integer axes get at most one bin per decodable value. Empty bins are
    filled by linear interpolation between their filled neighbours and listed
    in ``interpolated``.
    """
    if bins < 2:
        raise ValueError(f"bins must be >= 2, got {bins}")
    distinct = spec.distinct_values
    if distinct is not None and bins > distinct:
        logger.debug(f"{spec.name} takes {distinct} values; using {distinct} bins instead of {bins}")
        bins = distinct
    per_sample: Dict[int, List[float]] = {}
    value_of: Dict[int, float] = {}
    for record in records:
        if metric is not None and record.metric != metric:
            continue
        if record.score is None or not np.isfinite(record.score):
            continue
        per_sample.setdefault(record.sample_id, []).append(record.score)
        value_of[record.sample_id] = spec.numeric(record.values[spec.name])
    if not per_sample:
        raise ValueError(f"no scored records to bin for {spec.name}")

    lo, hi = spec.bin_domain
    edges = np.linspace(lo, hi, bins + 1)
    ids = sorted(per_sample)
    x = np.array([value_of[i] for i in ids])
    s = np.array([np.mean(per_sample[i]) for i in ids])
    if hi > lo:
        index = np.clip(np.floor((x - lo) / (hi - lo) * bins).astype(int), 0, bins - 1)
    else:
        index = np.zeros(x.size, dtype=int)
    counts = np.bincount(index, minlength=bins)
    sums = np.bincount(index, weights=s, minlength=bins)
    filled = counts > 0
    means = np.empty(bins)
    means[filled] = sums[filled] / counts[filled]
    empty = np.flatnonzero(~filled)
    if empty.size:
        centers = np.arange(bins)
        means[~filled] = np.interp(centers[~filled], centers[filled], means[filled])
        logger.warning(f"{empty.size} of {bins} bins for {spec.name} are empty; interpolated")
    smoothed = gaussian_filter1d(means, sigma, mode="nearest") if sigma > 0 else means.copy()
    return BinnedCurve(param=spec.name, metric=metric, bins=bins, edges=edges.tolist(), counts=counts.tolist(),
                       means=means.tolist(), smoothed=smoothed.tolist(), sigma=sigma,
                       interpolated=empty.tolist())


def _scope(report: SensitivityReport) -> str:
    return f"{report.method}/{report.metric}" if report.metric else report.method


def rank_report(reports: Sequence[SensitivityReport]) -> RankingTable:
    """Per-report rankings plus a Borda count across them; ties go to the earlier parameter."""
    if not reports:
        raise ValueError("rank_report needs at least one report")
    params = list(reports[0].params)
    borda = {name: 0 for name in params}
    rankings, sums = {}, {}
    for report in reports:
        if list(report.params) != params:
            raise ValueError("reports rank different hyperparameter lists")
        scope = _scope(report)
        while scope in rankings:
            scope += "'"
        ranked = report.ranked_names()
        rankings[scope] = ranked
        sums[scope] = report.ordered_sums()
        for position, name in enumerate(ranked):
            borda[name] += len(params) - 1 - position
    consolidated = sorted(params, key=lambda name: (-borda[name], params.index(name)))
    return RankingTable(params=params, rankings=rankings, ordered_sums=sums, borda=borda,
                        consolidated=consolidated)


def _index_row(report: SensitivityReport, i: int) -> list:
    def pick(values):
        return None if values is None else values[i]
    return [report.params[i], report.direct[i], pick(report.interaction), report.direct_norm[i],
            pick(report.interaction_norm), pick(report.mu_star), pick(report.direct_clamped),
            pick(report.interaction_clamped), pick(report.gap), report.ranking.index(i) + 1]


INDEX_COLUMNS = ["param", "direct", "interaction", "direct_norm", "interaction_norm", "mu_star",
                 "direct_clamped", "interaction_clamped", "gap", "rank"]


def write_report(store: ExperimentStore, method: str, metric: str, report: SensitivityReport,
                 problem_reports: Dict[str, SensitivityReport]) -> None:
    tag = f"{method}_{metric}"
    store.write_csv(f"indices_{tag}.csv", INDEX_COLUMNS, [_index_row(report, i) for i in range(len(report.params))])
    rows = []
    for problem_id in sorted(problem_reports):
        part = problem_reports[problem_id]
        rows.extend([problem_id] + _index_row(part, i) for i in range(len(part.params)))
    store.write_csv(f"problem_indices_{tag}.csv", ["problem"] + INDEX_COLUMNS, rows)
    store.write_json(f"report_{tag}.json", {
        "aggregate": report.model_dump(mode="json"),
        "problems": {pid: r.model_dump(mode="json") for pid, r in sorted(problem_reports.items())},
    })


def write_ranking(store: ExperimentStore, table: RankingTable) -> None:
    rows = []
    for scope, ranked in table.rankings.items():
        sums = dict(table.ordered_sums[scope])
        rows.extend([scope, position + 1, name, sums[name], None] for position, name in enumerate(ranked))
    rows.extend(["consolidated", position + 1, name, None, table.borda[name]]
                for position, name in enumerate(table.consolidated))
    store.write_csv(RANKING, ["scope", "rank", "param", "index_sum", "borda"], rows)


def write_bins(store: ExperimentStore, curve: BinnedCurve) -> None:
    interpolated = set(curve.interpolated)
    rows = [[b, curve.edges[b], curve.edges[b + 1], curve.counts[b], curve.means[b], curve.smoothed[b],
             b in interpolated, curve.sigma] for b in range(curve.bins)]
    store.write_csv(f"bins_{curve.param}_{curve.metric}.csv",
                    ["bin", "lower", "upper", "count", "mean", "smoothed", "interpolated", "sigma"], rows)


def write_statistics(store: ExperimentStore, problem_reports: Dict[str, Dict[str, SensitivityReport]],
                     seed: int = 0) -> None:
    """Pairwise t-tests and clustering over per-problem indices, per metric."""
    ttest_rows, cluster_rows = [], []
    for metric, by_problem in sorted(problem_reports.items()):
        reports = [by_problem[pid] for pid in sorted(by_problem)]
        if len(reports) >= 2:
            samples = analysis.effect_samples(reports)
            for a, b, result in analysis.ttest_matrix(samples):
                ttest_rows.append([metric, a, b, result.t, result.p, result.infinite])
        if len(reports) >= 3:
            items, matrix = analysis.effect_matrix(reports)
            clusters = analysis.kmeans_silhouette(matrix, seed=seed, items=items)
            curve = json.dumps({str(k): v for k, v in clusters.silhouette_curve.items()}, sort_keys=True)
            for i, item in enumerate(items):
                cluster_rows.append([metric, item, int(clusters.assignments[i]), clusters.projection[i, 0],
                                     clusters.projection[i, 1], clusters.k, clusters.degenerate, curve])
        else:
            logger.info(f"{len(reports)} per-problem reports for {metric}; clustering needs at least 3")
    store.write_csv(TTESTS, ["metric", "a", "b", "t", "p", "infinite"], ttest_rows)
    store.write_csv(CLUSTERS, ["metric", "item", "cluster", "pc1", "pc2", "k", "degenerate", "silhouette"],
                    cluster_rows)


def write_evals(store: ExperimentStore, config: ExperimentConfig, records: Sequence[EvalRecord]) -> None:
    header = ["algorithm", "problem", "method", "sample_id", "run_count", "metric", "value", "failures", "score"]
    rows = [[config.algorithm, r.problem, config.method, r.sample_id, len(r.run_values) - r.failures, r.metric,
             r.mean, r.failures, r.score] for r in records]
    store.write_csv(EVALS, header, rows)


def analyse(config: ExperimentConfig, space: HyperSpace, plan: SamplePlan, records: List[EvalRecord],
            store: Optional[ExperimentStore] = None) -> ExperimentResult:
    """Normalize scores, compute aggregate and per-problem indices, rank and bin."""
    result = ExperimentResult(output_dir=store.output_dir if store else "", plan=plan, records=records)
    ids = sorted(config.problem_ids)
    samples = plan.total_points
    for metric in config.metric_names:
        normalized = normalize_scores(_score_matrix(records, metric, samples, ids), ORIENTATION[metric],
                                      config.aggregation, labels=ids)
        column = {pid: j for j, pid in enumerate(ids)}
        for record in records:
            if record.metric == metric:
                score = normalized[record.sample_id, column[record.problem]]
                record.score = float(score) if np.isfinite(score) else None
        try:
            result.reports[metric] = compute_report(plan, space, model_output(normalized), metric,
                                                    config.sobol_estimator)
        except (DegenerateModelError, ValueError) as e:
            logger.error(f"no {metric} indices for {config.algorithm}: {e}")
            continue
        by_problem = {}
        for j, problem_id in enumerate(ids):
            try:
                by_problem[problem_id] = compute_report(plan, space, normalized[:, j], metric,
                                                        config.sobol_estimator, problem=problem_id)
            except (DegenerateModelError, ValueError) as e:
                logger.warning(f"no per-problem {metric} indices on {problem_id}: {e}")
        result.problem_reports[metric] = by_problem

    if result.reports:
        result.ranking = rank_report(list(result.reports.values()))
    result.failures = sum(r.failures for r in records)

    if store is not None:
        write_evals(store, config, records)
        for metric, report in result.reports.items():
            write_report(store, config.method, metric, report, result.problem_reports[metric])
        if result.ranking is not None:
            write_ranking(store, result.ranking)
        bins, sigma = config.binning()
        for metric in result.reports:
            for spec in space:
                write_bins(store, bin_scores(records, spec, bins, sigma, metric=metric))
        write_statistics(store, result.problem_reports, seed=config.seed)
    return result


def run_experiment(config: ExperimentConfig, store: Optional[ExperimentStore] = None) -> ExperimentResult:
    """Evaluate the full sample x problem x run grid, resuming from the store, then analyse it."""
    config.check()
    space = config.space
    plan = build_plan(space, config.method, config.seed, r=config.r, p=config.p, n=config.n,
                      low_discrepancy=config.low_discrepancy)
    store = store or ExperimentStore(config.output_dir)
    resumed = store.open_experiment(build_manifest(config, space, plan), plan.to_manifest())
    values = _sample_values(space, plan)
    if not resumed:
        _write_samples(store, space, plan, values)

    ids = config.problem_ids
    metrics = tuple(config.metric_names)
    done = store.completed_cells(metrics) if resumed else set()
    tasks = [
        CellTask(config.algorithm, values[sample_id], problem_id, config.problem_seed, sample_id, run,
                 cell_seed(config.seed, sample_id, problem_id, run), config.budget, metrics)
        for sample_id in range(plan.total_points)
        for problem_id in ids
        for run in range(config.runs)
        if (sample_id, problem_id, run) not in done
    ]
    total = plan.total_points * len(ids) * config.runs
    logger.info(f"{config.algorithm}/{config.method}: {total} cells, {len(done)} already done, "
                f"{len(tasks)} to run with parallelism {config.parallelism}")

    pending: List[list] = []
    executed = 0
    for rows in _execute(tasks, config.parallelism):
        pending.extend(rows)
        executed += 1
        if executed % BATCH_CELLS == 0:
            store.append_runs(pending)
            pending = []
            logger.info(f"Committed {len(done) + executed}/{total} cells")
    store.append_runs(pending)

    records = collect_records(store.load_runs(), values, ids, metrics, config.runs)
    result = analyse(config, space, plan, records, store)
    result.executed_cells = executed
    result.resumed_cells = len(done)
    store.touch_manifest(failures=result.failures, degenerate=sorted(set(metrics) - set(result.reports)))
    logger.info(f"Experiment finished in {store.output_dir}: {executed} cells run, "
                f"{result.failures} failed runs")
    return result


# store readers for the report/bins/stats commands

def load_reports(store: ExperimentStore) -> Dict[str, Tuple[SensitivityReport, Dict[str, SensitivityReport]]]:
    """Every ``report_<method>_<metric>.json`` in the store keyed by ``<method>_<metric>``."""
    found = {}
    for name in sorted(os.listdir(store.output_dir)):
        if name.startswith("report_") and name.endswith(".json"):
            data = store.read_json(name)
            aggregate = SensitivityReport.model_validate(data["aggregate"])
            problems = {pid: SensitivityReport.model_validate(r) for pid, r in data.get("problems", {}).items()}
            found[name[len("report_"):-len(".json")]] = (aggregate, problems)
    return found


def load_records(store: ExperimentStore) -> List[EvalRecord]:
    manifest = store.load_manifest()
    space = HyperSpace.model_validate(manifest["hyperspace"])
    samples = store.read_csv(SAMPLES)
    values = []
    for row in samples:
        u = [float(row[f"u_{name}"]) for name in space.names]
        values.append(decode(space, u))
    records = []
    for row in store.read_csv(EVALS):
        records.append(EvalRecord(
            sample_id=int(row["sample_id"]), values=values[int(row["sample_id"])], problem=row["problem"],
            metric=row["metric"], mean=float(row["value"]), run_values=[], failures=int(row["failures"]),
            score=float(row["score"]) if row["score"] else None,
        ))
    return records


def stored_space(store: ExperimentStore) -> HyperSpace:
    return HyperSpace.model_validate(store.load_manifest()["hyperspace"])
