"""How quickly do different influencer behaviors align a sparse crowd?

Fifty influencers are placed on a grid among 300 agents in the large world.
Each behavior runs the same three seeded trials; a trial finishes once half
the agents share a heading (within 0.1 rad).
"""

import numpy as np

from flockinfluence.harness.config import from_mapping
from flockinfluence.harness.runner import convergence_times, run_trial

BEHAVIORS = ("face", "lookahead", "coordinated", "multistep:face")


def main(trials=3):
    print(f"{'behavior':>16}  mean steps to 50% alignment  per trial")
    for name in BEHAVIORS:
        cfg = from_mapping(dict(setting="large", rv_count=300, inf_count=50, placement="grid",
                                behavior=name, trials=trials, seed=7))
        results = [run_trial(cfg, t) for t in range(trials)]
        times = convergence_times(results, cfg.max_steps)
        print(f"{name:>16}  {np.mean(times):27.0f}  {times.astype(int).tolist()}")


if __name__ == "__main__":
    main()
