"""CSV output of sweep results.

All numbers are written with ``repr`` so files are byte-identical for
identical inputs.
"""

from __future__ import annotations

import csv
import os
from pathlib import Path

from ..metrics import COLUMNS, Convergence, MetricSample
from .runner import SweepSummary, TrialResult

TIMESERIES = "timeseries.csv"
SUMMARY = "summary.csv"
CONVERGENCE = "convergence.csv"
CELLS = "cells.csv"


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return repr(v) if isinstance(v, float) else str(v)


def _write(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def write_timeseries(path, results: list[TrialResult]) -> None:
    header = ("cell", "trial", "seed") + COLUMNS
    _write(path, header, (
        (r.cell, r.trial, r.seed) + tuple(getattr(s, c) for c in COLUMNS)
        for r in results for s in r.samples))


def write_convergence(path, results: list[TrialResult]) -> None:
    _write(path, ("cell", "trial", "step", "censored"),
           ((r.cell, r.trial, r.convergence.step, r.convergence.censored) for r in results))


def write_summary(path, summary: SweepSummary) -> None:
    _write(path, ("cell", "metric", "step", "mean", "sem", "n", "single_trial", "censored"),
           ((r.cell, r.metric, r.step, r.mean, r.sem, r.n, r.single_trial, r.censored)
            for r in summary.rows))


def write_cells(path, cells) -> None:
    if not cells:
        return
    keys = list(cells[0].resolved().as_dict())
    _write(path, ["cell"] + keys,
           ([k] + [c.resolved().as_dict()[key] for key in keys] for k, c in enumerate(cells)))


def write_sweep(out_dir, cells, results: list[TrialResult], summary: SweepSummary) -> Path:
    out = Path(out_dir)
    os.makedirs(out, exist_ok=True)
    write_cells(out / CELLS, cells)
    write_timeseries(out / TIMESERIES, results)
    write_convergence(out / CONVERGENCE, results)
    write_summary(out / SUMMARY, summary)
    return out


def _int(s):
    return int(s)


def read_results(out_dir) -> list[TrialResult]:
    """Rebuild trial results from ``timeseries.csv`` and ``convergence.csv``."""
    out = Path(out_dir)
    trials: dict[tuple, TrialResult] = {}
    with open(out / TIMESERIES, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            key = (_int(row["cell"]), _int(row["trial"]))
            if key not in trials:
                trials[key] = TrialResult(key[1], _int(row["seed"]), [], Convergence(0, True), key[0])
            trials[key].samples.append(MetricSample(
                step=_int(row["step"]),
                flock_count=_int(row["flock_count"]),
                lone_count=_int(row["lone_count"]),
                lone_fraction=float(row["lone_fraction"]),
                max_aligned_count=_int(row["max_aligned_count"]),
                controlled_count=_int(row["controlled_count"]),
                offworld_count=_int(row["offworld_count"]),
            ))
    conv = out / CONVERGENCE
    if conv.exists():
        with open(conv, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                key = (_int(row["cell"]), _int(row["trial"]))
                if key in trials:
                    trials[key].convergence = Convergence(_int(row["step"]), row["censored"] == "1")
    return [trials[k] for k in sorted(trials)]
