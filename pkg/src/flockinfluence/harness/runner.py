"""Seeded trials, parameter sweeps and their aggregation."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .. import metrics
from ..core.geometry import TWO_PI
from ..core.sim import SimState, advance_inplace
from ..metrics import COLUMNS, Convergence, MetricSample
from ..placement import init_rv_agents, place_influencers
from .config import ExperimentConfig, from_mapping


def trial_seed(base_seed: int, trial_index: int, cell_index: int = 0) -> int:
    """64-bit seed for one trial, a stateless hash of its coordinates."""
    ss = np.random.SeedSequence([int(base_seed), int(cell_index), int(trial_index)])
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass
class TrialResult:
    trial: int
    seed: int
    samples: list[MetricSample]
    convergence: Convergence
    cell: int = 0


def initial_state(config: ExperimentConfig, rng: np.random.Generator) -> SimState:
    """RV agents get ids ``0..N_RV-1``; influencers follow."""
    world = config.world
    pos, headings = init_rv_agents(config.setting, config.rv_count, rng, world)
    k = config.inf_count
    inf_pos = place_influencers(config.placement_spec(), world, pos, rng)
    inf_h = rng.uniform(0.0, TWO_PI, k)
    return SimState(
        world,
        np.vstack([pos, inf_pos]),
        np.concatenate([headings, inf_h]),
        np.concatenate([np.zeros(config.rv_count, bool), np.ones(k, bool)]),
        rng=rng,
    )


def run_trial(config: ExperimentConfig, trial_index: int, cell_index: int = 0) -> TrialResult:
    """Simulate one trial, sampling metrics every ``sample_interval`` steps from step 0.

    With early exit enabled the run stops at the first sample reaching
    half alignment; otherwise it runs to ``max_steps``.
    """
    seed = trial_seed(config.seed, trial_index, cell_index)
    rng = np.random.default_rng(seed)
    sim = initial_state(config, rng)
    behavior = config.behavior_spec() if config.inf_count else None
    need = math.ceil(config.rv_count / 2)
    eps = config.epsilon_align
    interval = config.sample_interval
    early = config.early_exit_enabled

    samples = [metrics.sample(sim, eps, config.proximity_only_flocks)]
    while sim.t < config.max_steps:
        if early and samples[-1].max_aligned_count >= need:
            break
        for _ in range(interval):
            advance_inplace(sim, behavior)
        samples.append(metrics.sample(sim, eps, config.proximity_only_flocks))
    conv = metrics.convergence_step(samples, config.rv_count)
    return TrialResult(trial_index, seed, samples, conv, cell_index)


def _run_job(job):
    cfg_dict, trial, cell = job
    return run_trial(from_mapping(cfg_dict), trial, cell)


def run_trials(jobs, threads: int = 1) -> list[TrialResult]:
    """Run ``(config, trial, cell)`` jobs, in order, on up to ``threads`` processes."""
    jobs = list(jobs)
    if threads <= 1 or len(jobs) <= 1:
        return [run_trial(c, t, k) for c, t, k in jobs]
    payload = [(c.as_dict(), t, k) for c, t, k in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as pool:
        return list(pool.map(_run_job, payload, chunksize=1))


def expand_axes(config: ExperimentConfig, axes: dict | None) -> list[ExperimentConfig]:
    """Cartesian product of ``axes`` over ``config``; the last axis varies fastest."""
    if not axes:
        return [config]
    keys = list(axes)
    return [config.replace(**dict(zip(keys, combo)))
            for combo in itertools.product(*(axes[k] for k in keys))]


@dataclass
class SummaryRow:
    cell: int
    metric: str
    step: int | None
    mean: float | None
    sem: float
    n: int
    single_trial: bool
    censored: int = 0


@dataclass
class SweepSummary:
    rows: list[SummaryRow]

    def get(self, cell: int, metric: str, step: int | None = None) -> SummaryRow:
        for r in self.rows:
            if r.cell == cell and r.metric == metric and r.step == step:
                return r
        raise KeyError((cell, metric, step))

    def curve(self, cell: int, metric: str):
        """``(steps, means)`` of a time-series metric."""
        rows = [r for r in self.rows if r.cell == cell and r.metric == metric and r.step is not None]
        rows.sort(key=lambda r: r.step)
        return np.array([r.step for r in rows]), np.array([r.mean for r in rows])


@dataclass
class SweepResult:
    cells: list[ExperimentConfig]
    results: list[TrialResult]
    summary: SweepSummary = field(default=None)


def mean_sem(values):
    """Mean and standard error (sample stddev / sqrt(n)); SEM is 0 for one value."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return None, 0.0
    if v.size == 1:
        return float(v[0]), 0.0
    return float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size))


def summarize(results: list[TrialResult]) -> SweepSummary:
    """Per-cell, per-step mean and SEM of every metric, then convergence.

    Trials that stopped early contribute only to the steps they reached;
    ``n`` records how many trials each row averages. Convergence steps
    average the converged trials; censored trials are counted separately
    and the mean is ``None`` when every trial was censored.
    """
    rows = []
    by_cell: dict[int, list[TrialResult]] = {}
    for r in sorted(results, key=lambda r: (r.cell, r.trial)):
        by_cell.setdefault(r.cell, []).append(r)
    for cell, trials in by_cell.items():
        single = len(trials) == 1
        steps = sorted({s.step for t in trials for s in t.samples})
        per_step = {st: [] for st in steps}
        for t in trials:
            for s in t.samples:
                per_step[s.step].append(s)
        for metric in COLUMNS[1:]:
            for st in steps:
                m, e = mean_sem([getattr(s, metric) for s in per_step[st]])
                rows.append(SummaryRow(cell, metric, st, m, e, len(per_step[st]), single))
        done = [t.convergence.step for t in trials if not t.convergence.censored]
        m, e = mean_sem(done)
        rows.append(SummaryRow(cell, "convergence_step", None, m, e, len(done), single,
                               len(trials) - len(done)))
    return SweepSummary(rows)


def run_sweep(config: ExperimentConfig, axes: dict | None = None,
              threads: int | None = None) -> SweepResult:
    """Run every cell of the grid for ``config.trials`` trials each."""
    cells = expand_axes(config, axes)
    jobs = [(c, t, k) for k, c in enumerate(cells) for t in range(c.trials)]
    results = run_trials(jobs, threads or config.threads)
    return SweepResult(cells, results, summarize(results))


def convergence_times(results, cap: int | None = None) -> np.ndarray:
    """Convergence steps with censored trials counted at ``cap`` (or their last step)."""
    return np.array([r.convergence.step if not r.convergence.censored or cap is None else cap
                     for r in results], dtype=float)
