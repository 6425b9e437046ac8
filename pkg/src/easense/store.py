import csv
import io
import json
import logging
import os
import threading
from datetime import datetime
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from easense.errors import StoreCorruptedError

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
PLAN = "plan.json"
SAMPLES = "samples.csv"
RUNS = "runs.csv"
EVALS = "evals.csv"
RANKING = "ranking.csv"
TTESTS = "ttests.csv"
CLUSTERS = "clusters.csv"

RUN_COLUMNS = ["sample_id", "problem", "run", "metric", "value", "evals", "failed"]


def format_value(value: Any) -> str:
    """CSV cell text; floats keep 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, np.floating):
        return format(float(value), ".17g")
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def _csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def atomic_write(target: str, text: str) -> str:
    """Write through a fsynced temporary file and ``os.replace`` it over target."""
    tmp = target + ".tmp"
    with open(tmp, "w", newline="") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, target)
    return target


class ExperimentStore:
    """Owns one experiment's output directory.

    Everything except the ``runs.csv`` journal is written whole through a
    temporary file and ``os.replace``; the journal only grows, one fsynced
    batch at a time.
    """

    def __init__(self, output_dir: str):
        self.output_dir = os.path.abspath(output_dir)
        os.makedirs(self.output_dir, exist_ok=True)
        logger.debug(f"Experiment store at {self.output_dir}")

    def path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def exists(self, name: str) -> bool:
        return os.path.exists(self.path(name))

    # whole-file artifacts

    def write_text(self, name: str, text: str) -> str:
        return atomic_write(self.path(name), text)

    def write_json(self, name: str, data: Any) -> str:
        return self.write_text(name, json.dumps(data, indent=2, sort_keys=True) + "\n")

    def read_json(self, name: str) -> Any:
        try:
            with open(self.path(name), "r") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise StoreCorruptedError(f"{name} in {self.output_dir} is not valid JSON: {e}") from e

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        target = self.write_text(name, _csv_text(header, rows))
        logger.info(f"Wrote {target}")
        return target

    def read_csv(self, name: str) -> List[Dict[str, str]]:
        with open(self.path(name), "r", newline="") as f:
            return list(csv.DictReader(f))

    # manifest and plan

    def open_experiment(self, manifest: Dict[str, Any], plan: Dict[str, Any]) -> bool:
        """Write the manifest and plan, or verify them against an existing store.

        Returns True when an earlier run of the same experiment is being resumed.
        """
        if not self.exists(MANIFEST):
            now = datetime.now().isoformat()
            self.write_json(MANIFEST, {**manifest, "created": now, "updated": now})
            self.write_json(PLAN, plan)
            return False

        existing = self.read_json(MANIFEST)
        if existing.get("fingerprint") != manifest.get("fingerprint"):
            raise StoreCorruptedError(
                f"{self.output_dir} holds a different experiment "
                f"(fingerprint {existing.get('fingerprint')} != {manifest.get('fingerprint')})"
            )
        if not self.exists(PLAN):
            raise StoreCorruptedError(f"{self.output_dir} has a manifest but no {PLAN}")
        stored_plan = self.read_json(PLAN)
        if json.dumps(stored_plan, sort_keys=True) != json.dumps(json.loads(json.dumps(plan)), sort_keys=True):
            raise StoreCorruptedError(f"stored sample plan in {self.output_dir} does not match the regenerated plan")
        self.touch_manifest()
        logger.info(f"Resuming experiment in {self.output_dir}")
        return True

    def load_manifest(self) -> Dict[str, Any]:
        if not self.exists(MANIFEST):
            raise FileNotFoundError(f"no {MANIFEST} in {self.output_dir}")
        return self.read_json(MANIFEST)

    def touch_manifest(self, **updates: Any) -> None:
        manifest = self.read_json(MANIFEST)
        manifest.update(updates)
        manifest["updated"] = datetime.now().isoformat()
        self.write_json(MANIFEST, manifest)

    def load_plan(self) -> Dict[str, Any]:
        return self.read_json(PLAN)

    # run journal

    def _repair_tail(self) -> None:
        """Drop a trailing partial line left by an interrupted batch write."""
        journal = self.path(RUNS)
        with open(journal, "rb+") as f:
            data = f.read()
            if not data or data.endswith(b"\n"):
                return
            cut = data.rfind(b"\n") + 1
            f.seek(cut)
            f.truncate()
        logger.warning(f"Discarded an incomplete trailing row in {journal}")

    def append_runs(self, rows: Sequence[Sequence[Any]]) -> None:
        """Commit one batch of journal rows: a single write, flush and fsync."""
        if not rows:
            return
        journal = self.path(RUNS)
        new_file = not os.path.exists(journal)
        text = _csv_text(RUN_COLUMNS, rows)
        if not new_file:
            text = text.split("\n", 1)[1]
        with open(journal, "a", newline="") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        logger.debug(f"Committed {len(rows)} journal rows")

    def load_runs(self) -> List[Dict[str, Any]]:
        if not self.exists(RUNS):
            return []
        self._repair_tail()
        parsed = []
        for line, row in enumerate(self.read_csv(RUNS), start=2):
            try:
                parsed.append({
                    "sample_id": int(row["sample_id"]),
                    "problem": row["problem"],
                    "run": int(row["run"]),
                    "metric": row["metric"],
                    "value": float(row["value"]),
                    "evals": int(row["evals"]),
                    "failed": bool(int(row["failed"])),
                })
            except (KeyError, TypeError, ValueError) as e:
                raise StoreCorruptedError(f"unparsable row {line} in {self.path(RUNS)}: {row}") from e
        return parsed

    def completed_cells(self, metrics: Sequence[str]) -> Set[Tuple[int, str, int]]:
        """Cells whose journal holds a row for every requested metric."""
        seen: Dict[Tuple[int, str, int], Set[str]] = {}
        for row in self.load_runs():
            seen.setdefault((row["sample_id"], row["problem"], row["run"]), set()).add(row["metric"])
        wanted = set(metrics)
        return {cell for cell, got in seen.items() if wanted <= got}


class ExperimentHistory:
    """Experiments submitted through the service, persisted as JSON.

    ``record`` is called from worker threads; appends and saves are serialized
    by a lock and the file is replaced atomically.
    """

    def __init__(self, base_dir: Optional[str] = None):
        if base_dir is None:
            base_dir = os.path.join(os.path.expanduser("~/.cache"), "easense")
        os.makedirs(base_dir, exist_ok=True)
        self.history_file = os.path.join(base_dir, "history.json")
        self._lock = threading.Lock()
        self.load_history()

    def load_history(self):
        with self._lock:
            if os.path.exists(self.history_file):
                with open(self.history_file, "r") as f:
                    self.history = json.load(f)
            else:
                self.history = []

    def _save(self):
        atomic_write(self.history_file, json.dumps(self.history, indent=2))

    def record(self, config: Dict[str, Any], output_dir: str, status: str,
               error: Optional[str] = None) -> Dict[str, Any]:
        with self._lock:
            now = datetime.now()
            entry = {
                "id": f"{now.strftime('%Y%m%d_%H%M%S_%f')}_{len(self.history):04d}",
                "timestamp": now.isoformat(),
                "output_dir": output_dir,
                "status": status,
                "error": error,
                "config": config,
            }
            self.history.append(entry)
            self._save()
        logger.info(f"Experiment {entry['id']} {status}: {output_dir}")
        return entry

    def list_experiments(self) -> List[Dict[str, Any]]:
        with self._lock:
            return list(self.history)
