"""Traveling versus stationary influencers in the open herd world.

Influencers start at k-means centers of the herd. With ``face`` they walk
with the agents they capture; with ``circle`` they orbit in place and only
hold agents that stay near them. The count of agents connected to and
aligned with an influencer shows the difference.
"""

from flockinfluence.harness.config import from_mapping
from flockinfluence.harness.runner import run_sweep


def main():
    cfg = from_mapping(dict(setting="herd", rv_count=300, inf_count=50, placement="kmeans",
                            steps=6000, sample_interval=1000, trials=2, seed=9))
    res = run_sweep(cfg, {"behavior": ["face", "circle", "polygon"]})
    print(" step  " + "  ".join(f"{c.behavior:>8}" for c in res.cells))
    steps, _ = res.summary.curve(0, "controlled_count")
    curves = [res.summary.curve(k, "controlled_count")[1] for k in range(len(res.cells))]
    for i, s in enumerate(steps):
        print(f"{s:5d}  " + "  ".join(f"{c[i]:8.1f}" for c in curves))


if __name__ == "__main__":
    main()
