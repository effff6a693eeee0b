"""Multi-trial harness: seed fan-out, curve aggregation and PoI reports.

Trial ``i`` of a sweep runs with seed ``split_seed(master_seed, i)``.  Trials
are independent, so they may run in worker processes; results are merged by
trial index and aggregated in one place, which keeps the output identical to
a serial run.  Standard deviations divide by R (population std).
"""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from . import _backend
from .instance import KnapsackInstance
from .rng import split_seed
from .solver import SolverConfig, TrialResult, run

log = logging.getLogger(__name__)

CURVE_HEADER = ["iteration", "mean_best", "std_best", "min_best", "max_best"]
STD_DDOF = 0


class UndefinedComparisonError(ValueError):
    pass


@dataclass(eq=False)
class AggregateStats:
    """Cross-trial statistics for one (config, instance) sweep.

    ``config.seed`` holds the master seed of the sweep.
    """

    trials: int
    mean_curve: np.ndarray
    std_curve: np.ndarray
    min_curve: np.ndarray
    max_curve: np.ndarray
    mean_final_profit: float
    std_final_profit: float
    mean_last_update: float
    master_seed: int
    config: SolverConfig
    instance_file: Optional[str] = None

    @property
    def algorithm(self) -> str:
        return self.config.algorithm

    def summary(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "pair_count": int(self.config.pair_count),
            "n": int(self.config.n),
            "max_iter": int(self.config.max_iter),
            "theta": float(self.config.theta),
            "trials": int(self.trials),
            "master_seed": int(self.master_seed),
            "mean_final_profit": float(self.mean_final_profit),
            "std_final_profit": float(self.std_final_profit),
            "mean_last_update": float(self.mean_last_update),
            "instance_file": self.instance_file if self.instance_file is not None else "",
            "std_ddof": STD_DDOF,
        }

    def __eq__(self, other):
        if not isinstance(other, AggregateStats):
            return NotImplemented
        curves = ("mean_curve", "std_curve", "min_curve", "max_curve")
        return self.summary() == other.summary() and all(
            np.array_equal(getattr(self, c), getattr(other, c)) for c in curves
        )

    __hash__ = None


@dataclass
class ComparisonReport:
    baseline: AggregateStats
    improved: AggregateStats
    poi_percent: float

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline.summary(),
            "improved": self.improved.summary(),
            "poi_percent": self.poi_percent,
        }


def trial_seed(master_seed: int, index: int) -> int:
    return split_seed(master_seed, index)


def run_trial(config: SolverConfig, inst: KnapsackInstance, master_seed: int, index: int) -> TrialResult:
    return run(config.with_seed(trial_seed(master_seed, index)), inst)


def _worker(args):
    backend, config, inst, master_seed, index = args
    _backend.set_backend(backend)
    return index, run_trial(config, inst, master_seed, index)


def aggregate(results: list[TrialResult], config: SolverConfig, master_seed: int,
              instance_file: Optional[str] = None) -> AggregateStats:
    if not results:
        raise ValueError("need at least one trial")
    curves = np.stack([r.curve for r in results]).astype(np.float64)
    finals = np.array([r.best_profit for r in results], dtype=np.float64)
    last = np.array([r.last_update_iter for r in results], dtype=np.float64)
    return AggregateStats(
        trials=len(results),
        mean_curve=curves.mean(axis=0),
        std_curve=curves.std(axis=0, ddof=STD_DDOF),
        min_curve=curves.min(axis=0),
        max_curve=curves.max(axis=0),
        mean_final_profit=float(finals.mean()),
        std_final_profit=float(finals.std(ddof=STD_DDOF)),
        mean_last_update=float(last.mean()),
        master_seed=int(master_seed),
        config=replace(config, seed=int(master_seed)),
        instance_file=instance_file,
    )


def run_trials(
    config: SolverConfig,
    inst: KnapsackInstance,
    trials: int,
    master_seed: int,
    workers: int = 1,
    instance_file: Optional[str] = None,
) -> AggregateStats:
    """Run ``trials`` independent solver runs and aggregate them."""
    if int(trials) != trials or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    by_index: dict[int, TrialResult] = {}
    if workers == 1:
        for i in range(trials):
            by_index[i] = run_trial(config, inst, master_seed, i)
    else:
        jobs = [(_backend.active(), config, inst, master_seed, i) for i in range(trials)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, res in pool.map(_worker, jobs):
                by_index[i] = res
    log.debug("finished %d trials of %s", trials, config.algorithm)
    results = [by_index[i] for i in range(trials)]
    return aggregate(results, config, master_seed, instance_file)


def poi_percent(baseline_last_update: float, improved_last_update: float) -> float:
    """Relative reduction of the mean last-update iteration, in percent."""
    if baseline_last_update == 0:
        raise UndefinedComparisonError("baseline mean_last_update is 0; PoI is undefined")
    return (baseline_last_update - improved_last_update) / baseline_last_update * 100.0


def check_comparable(baseline: dict, improved: dict) -> None:
    for key in ("instance_file", "max_iter"):
        if baseline.get(key) != improved.get(key):
            raise ValueError(
                f"summaries differ in {key}: {baseline.get(key)!r} vs {improved.get(key)!r}"
            )


def poi(baseline: AggregateStats, improved: AggregateStats) -> ComparisonReport:
    check_comparable(baseline.summary(), improved.summary())
    pct = poi_percent(baseline.mean_last_update, improved.mean_last_update)
    return ComparisonReport(baseline, improved, pct)


# -- files -----------------------------------------------------------------

def _paths(out_dir, stem):
    out_dir = Path(out_dir)
    return out_dir / f"{stem}_curve.csv", out_dir / f"{stem}_summary.json"


def export_stats(stats: AggregateStats, out_dir, stem: Optional[str] = None) -> tuple[Path, Path]:
    """Write ``<stem>_curve.csv`` and ``<stem>_summary.json`` into ``out_dir``."""
    csv_path, json_path = _paths(out_dir, stem or stats.algorithm)
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_path, "w", newline="") as fh:
            out = csv.writer(fh, lineterminator="\n")
            out.writerow(CURVE_HEADER)
            rows = zip(stats.mean_curve, stats.std_curve, stats.min_curve, stats.max_curve)
            for t, row in enumerate(rows, start=1):
                out.writerow([t, *(repr(float(v)) for v in row)])
        json_path.write_text(json.dumps(stats.summary(), indent=2) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write stats to {out_dir}: {exc}") from exc
    return csv_path, json_path


def read_curve_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CURVE_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        rows = [[float(v) for v in row[1:]] for row in reader]
    return np.array(rows, dtype=np.float64).reshape(-1, 4)


def import_stats(csv_path, json_path) -> AggregateStats:
    summary = json.loads(Path(json_path).read_text())
    curves = read_curve_csv(csv_path)
    config = SolverConfig(
        n=summary["n"],
        max_iter=summary["max_iter"],
        theta=summary["theta"],
        pair_count=summary["pair_count"],
        seed=summary["master_seed"],
    )
    return AggregateStats(
        trials=summary["trials"],
        mean_curve=curves[:, 0].copy(),
        std_curve=curves[:, 1].copy(),
        min_curve=curves[:, 2].copy(),
        max_curve=curves[:, 3].copy(),
        mean_final_profit=summary["mean_final_profit"],
        std_final_profit=summary["std_final_profit"],
        mean_last_update=summary["mean_last_update"],
        master_seed=summary["master_seed"],
        config=config,
        instance_file=summary["instance_file"] or None,
    )
