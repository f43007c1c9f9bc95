"""Command line entry point: ``run``, ``sweep`` and ``summarize``."""

from __future__ import annotations

import argparse
import logging
import sys
import time

from .config import ConfigError, from_mapping, load_config
from .io import SUMMARY, read_results, write_summary, write_sweep
from .runner import expand_axes, run_sweep, summarize

log = logging.getLogger("flockinfluence")

# flag -> config key
FLAGS = {
    "setting": "setting",
    "rv_count": "rv_count",
    "inf_count": "inf_count",
    "placement": "placement",
    "placement_radius": "placement_radius",
    "behavior": "behavior",
    "goal_theta": "goal_theta",
    "threshold_frac": "threshold_frac",
    "final_radius": "final_radius",
    "polygon_sides": "polygon_sides",
    "candidates": "candidates",
    "steps": "steps",
    "sample_interval": "sample_interval",
    "trials": "trials",
    "seed": "seed",
    "epsilon_align": "epsilon_align",
    "threads": "threads",
}


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="YAML config file; flags override its values")
    p.add_argument("--setting", choices=("small", "large", "herd"))
    p.add_argument("--rv-count", type=int)
    p.add_argument("--inf-count", type=int)
    p.add_argument("--placement")
    p.add_argument("--placement-radius", type=float)
    p.add_argument("--behavior", help="e.g. face, lookahead, multistep:coordinated, circle")
    p.add_argument("--goal-theta", help="radians; 'pi/4' style values accepted")
    p.add_argument("--threshold-frac", type=float)
    p.add_argument("--final-radius", type=float)
    p.add_argument("--polygon-sides", type=int)
    p.add_argument("--candidates", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--sample-interval", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--epsilon-align", type=float)
    p.add_argument("--threads", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--early-exit", dest="early_exit", action="store_true", default=None,
                   help="stop each trial once half the agents align")
    g.add_argument("--no-early-exit", dest="early_exit", action="store_false")
    p.add_argument("--out", required=True, help="output directory")


def _config(args):
    base = load_config(args.config).as_dict() if args.config else {}
    for flag, key in FLAGS.items():
        v = getattr(args, flag)
        if v is not None:
            base[key] = v
    if args.early_exit is not None:
        base["early_exit"] = args.early_exit
    return from_mapping(base)


def _parse_axis(text: str):
    key, sep, values = text.partition("=")
    if not sep or not values:
        raise argparse.ArgumentTypeError(f"axis must look like key=v1,v2: {text!r}")
    key = key.strip().replace("-", "_")
    return FLAGS.get(key, key), [v.strip() for v in values.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flockinfluence",
                                description="Flocking simulations with influencing agents.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one cell")
    _add_config_flags(run)
    sweep = sub.add_parser("sweep", help="run a Cartesian grid of cells")
    _add_config_flags(sweep)
    sweep.add_argument("--axis", action="append", type=_parse_axis, default=[],
                       help="grid axis, e.g. --axis inf-count=10,20,30 (repeatable)")
    summ = sub.add_parser("summarize", help="aggregate an existing output directory")
    summ.add_argument("--out", required=True, help="directory holding timeseries.csv")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s")
    try:
        if args.command == "summarize":
            results = read_results(args.out)
            write_summary(f"{args.out}/{SUMMARY}", summarize(results))
            print(f"summarized {len(results)} trials into {args.out}/{SUMMARY}")
            return 0
        cfg = _config(args)
        axes = dict(args.axis) if args.command == "sweep" else None
        if axes:
            # validate every cell before any work starts
            cells = expand_axes(cfg, axes)
            log.info("%d cells x %d trials", len(cells), cfg.trials)
        t0 = time.perf_counter()
        res = run_sweep(cfg, axes)
        out = write_sweep(args.out, res.cells, res.results, res.summary)
        print(f"{len(res.results)} trials in {time.perf_counter() - t0:.1f}s -> {out}")
        return 0
    except (ConfigError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
