"""Command-line entry point: ``easense run|report|bins|stats|presets|serve``."""
import argparse
import json
import logging
import sys
from typing import List, Optional

from easense.config import MOO_BINNING, SOO_BINNING, load_config
from easense.errors import EasenseError
from easense.hyperspace import PRESETS
from easense.runner import (
    bin_scores,
    load_records,
    load_reports,
    rank_report,
    run_experiment,
    stored_space,
    write_bins,
    write_ranking,
    write_statistics,
)
from easense.store import ExperimentStore

logger = logging.getLogger(__name__)


def _filtered(store: ExperimentStore, metric: Optional[str], method: Optional[str]):
    found = load_reports(store)
    return {
        tag: pair for tag, pair in found.items()
        if (metric is None or pair[0].metric == metric) and (method is None or pair[0].method == method)
    }


def cmd_run(args) -> int:
    config = load_config(args.config)
    updates = {}
    if args.parallelism is not None:
        updates["parallelism"] = args.parallelism
    if args.output is not None:
        updates["output_dir"] = args.output
    if updates:
        config = config.model_copy(update=updates)
    result = run_experiment(config)
    print(f"Store: {result.output_dir}")
    print(f"Cells run: {result.executed_cells} (resumed {result.resumed_cells}), failed runs: {result.failures}")
    if result.ranking is not None:
        print("Consolidated ranking: " + " > ".join(result.ranking.consolidated))
    return 0


def cmd_report(args) -> int:
    reports = []
    for path in args.stores:
        reports.extend(aggregate for aggregate, _ in _filtered(ExperimentStore(path), args.metric, args.method).values())
    if not reports:
        raise EasenseError("no sensitivity reports match the filters")
    table = rank_report(reports)
    for scope, ranked in table.rankings.items():
        sums = dict(table.ordered_sums[scope])
        print(f"[{scope}]")
        for position, name in enumerate(ranked, start=1):
            print(f"  {position:2d}. {name:<18} {sums[name]:.4f}")
    print("[consolidated] " + " > ".join(table.consolidated))
    if len(args.stores) == 1:
        write_ranking(ExperimentStore(args.stores[0]), table)
    return 0


def cmd_bins(args) -> int:
    store = ExperimentStore(args.store)
    space = stored_space(store)
    spec = space.param(args.param)
    records = load_records(store)
    manifest = store.load_manifest()
    moo = manifest["config"]["algorithm"] in ("nsga3", "moead")
    default_bins, default_sigma = MOO_BINNING if moo else SOO_BINNING
    metrics = [args.metric] if args.metric else sorted({r.metric for r in records})
    for metric in metrics:
        curve = bin_scores(records, spec, args.bins or default_bins,
                           default_sigma if args.sigma is None else args.sigma, metric=metric)
        write_bins(store, curve)
        print(json.dumps({"param": curve.param, "metric": metric, "smoothed": curve.smoothed}))
    return 0


def cmd_stats(args) -> int:
    store = ExperimentStore(args.store)
    by_metric = {}
    for aggregate, problems in _filtered(store, args.metric, args.method).values():
        by_metric[aggregate.metric] = problems
    if not by_metric:
        raise EasenseError("no per-problem reports match the filters")
    write_statistics(store, by_metric, seed=args.seed)
    print(f"Wrote t-tests and clusters to {store.output_dir}")
    return 0


def cmd_presets(args) -> int:
    for name, space in PRESETS.items():
        print(f"{name}:")
        for spec in space:
            domain = spec.categories if spec.is_categorical else [spec.lower, spec.upper]
            print(f"  {spec.name:<18} {spec.kind:<12} {domain}")
    return 0


def cmd_serve(args) -> int:
    from easense.server import main as serve

    serve(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="easense", description="Hyperparameter sensitivity experiments "
                                                                 "for evolutionary algorithms")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run (or resume) an experiment from a JSON config")
    run.add_argument("config")
    run.add_argument("--parallelism", type=int)
    run.add_argument("--output")
    run.set_defaults(func=cmd_run)

    report = sub.add_parser("report", help="print and consolidate hyperparameter rankings")
    report.add_argument("stores", nargs="+")
    report.add_argument("--metric")
    report.add_argument("--method", choices=["morris", "morris_lhs", "sobol"])
    report.set_defaults(func=cmd_report)

    bins = sub.add_parser("bins", help="bin normalized scores along one hyperparameter")
    bins.add_argument("store")
    bins.add_argument("--param", required=True)
    bins.add_argument("--metric")
    bins.add_argument("--bins", type=int)
    bins.add_argument("--sigma", type=float)
    bins.set_defaults(func=cmd_bins)

    stats = sub.add_parser("stats", help="t-tests and clustering over per-problem indices")
    stats.add_argument("store")
    stats.add_argument("--metric")
    stats.add_argument("--method", choices=["morris", "morris_lhs", "sobol"])
    stats.add_argument("--seed", type=int, default=0)
    stats.set_defaults(func=cmd_stats)

    presets = sub.add_parser("presets", help="list the built-in hyperparameter spaces")
    presets.set_defaults(func=cmd_presets)

    serve = sub.add_parser("serve", help="start the websocket experiment service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    try:
        return args.func(args)
    except (EasenseError, FileNotFoundError, KeyError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
