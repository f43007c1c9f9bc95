"""Flock formation without influencers, torus versus open world.

On the 1000 x 1000 torus agents first gather into many small flocks, which
then merge, so the flock count rises and falls again. In the open herd world
flocks that leave each other never meet again and the count levels off.
"""

from flockinfluence.harness.config import from_mapping
from flockinfluence.harness.runner import run_sweep


def curve(setting, trials=5):
    cfg = from_mapping(dict(setting=setting, rv_count=300, inf_count=0, steps=6000,
                            sample_interval=500, trials=trials, seed=1))
    summary = run_sweep(cfg).summary
    steps, flocks = summary.curve(0, "flock_count")
    _, lone = summary.curve(0, "lone_count")
    return steps, flocks, lone


def main():
    for setting in ("large", "herd"):
        steps, flocks, lone = curve(setting)
        print(f"\n{setting}: mean over 5 trials")
        print(" step  flocks  lone agents")
        for s, f, l in zip(steps, flocks, lone):
            print(f"{s:5d}  {f:6.1f}  {l:11.1f}")


if __name__ == "__main__":
    main()
