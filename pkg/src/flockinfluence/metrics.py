"""Flock statistics sampled during a run."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core.geometry import TWO_PI, DegenerateMeanError, angle_diff_array, circular_mean
from .core.spatial import build_index

DEFAULT_EPSILON = 0.1

COLUMNS = ("step", "flock_count", "lone_count", "lone_fraction", "max_aligned_count",
           "controlled_count", "offworld_count")


@dataclass(frozen=True)
class MetricSample:
    step: int
    flock_count: int
    lone_count: int
    lone_fraction: float
    max_aligned_count: int
    controlled_count: int
    offworld_count: int

    def as_row(self) -> dict:
        return asdict(self)


class Convergence(NamedTuple):
    """First sampled step reaching half alignment; ``censored`` if never."""

    step: int
    censored: bool = False


def _pairs(positions, world, radius, method="grid"):
    """Unordered neighbor pairs (i < j) within ``radius``."""
    index = build_index(positions, world, method)
    offsets, nbrs = index.neighbor_lists(radius)
    rows = np.repeat(np.arange(len(index)), np.diff(offsets))
    keep = rows < nbrs
    return rows[keep], nbrs[keep], offsets


def _components(n, i, j):
    g = coo_matrix((np.ones(i.size, dtype=np.int8), (i, j)), shape=(n, n))
    return connected_components(g, directed=False)


def proximity_components(positions, radius: float, world) -> list[list[int]]:
    """Connected components of the distance-``radius`` graph, as index lists."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    n = positions.shape[0]
    if n == 0:
        return []
    i, j, _ = _pairs(positions, world, radius)
    _, labels = _components(n, i, j)
    groups: dict[int, list[int]] = {}
    for a, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(a)
    return list(groups.values())


def flock_count(positions, headings, radius: float, world, epsilon: float = DEFAULT_EPSILON,
                proximity_only: bool = False) -> int:
    """Components of size >= 2 linked by proximity and (optionally) alignment."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    headings = np.asarray(headings, dtype=float)
    n = positions.shape[0]
    if n == 0:
        return 0
    i, j, _ = _pairs(positions, world, radius)
    return _flocks(n, i, j, headings, epsilon, proximity_only)


def _flocks(n, i, j, headings, epsilon, proximity_only):
    if not proximity_only:
        keep = np.abs(angle_diff_array(headings[i], headings[j])) <= epsilon
        i, j = i[keep], j[keep]
    _, labels = _components(n, i, j)
    return int((np.bincount(labels) >= 2).sum())


def lone_count(positions, radius: float, world) -> int:
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    if positions.shape[0] == 0:
        return 0
    offsets, _ = build_index(positions, world).neighbor_lists(radius)
    return int((np.diff(offsets) == 0).sum())


def max_aligned_group(headings: Sequence[float], epsilon: float = DEFAULT_EPSILON):
    """Largest set of headings fitting in an arc of width ``epsilon``.

    Returns ``(count, direction)`` where ``direction`` is the middle of an
    optimal arc, so every member is within ``epsilon / 2`` of it.
    """
    h = np.sort(np.mod(np.asarray(headings, dtype=float), TWO_PI))
    n = h.size
    if n == 0:
        raise ValueError("max_aligned_group of an empty sequence")
    ext = np.concatenate([h, h + TWO_PI])
    # arc [h[i], h[i] + eps] holds ext[i:hi[i]]
    hi = np.searchsorted(ext, h + epsilon, side="right")
    counts = np.minimum(hi - np.arange(n), n)
    best = int(counts.argmax())
    return int(counts[best]), float(np.mod(h[best] + epsilon / 2.0, TWO_PI))


def convergence_step(samples: Sequence[MetricSample], n_rv: int) -> Convergence:
    """First sample where at least half the Reynolds-Vicsek agents align."""
    need = math.ceil(n_rv / 2)
    for s in samples:
        if s.max_aligned_count >= need:
            return Convergence(s.step, False)
    return Convergence(samples[-1].step if samples else 0, True)


def controlled_count(positions, headings, influencer, radius: float, world,
                     epsilon: float = DEFAULT_EPSILON) -> int:
    """RV agents sharing a proximity component with influencers and facing their mean heading."""
    positions = np.asarray(positions, dtype=float).reshape(-1, 2)
    headings = np.asarray(headings, dtype=float)
    influencer = np.asarray(influencer, dtype=bool)
    n = positions.shape[0]
    if n == 0 or not influencer.any():
        return 0
    i, j, _ = _pairs(positions, world, radius)
    _, labels = _components(n, i, j)
    return _controlled(labels, headings, influencer, np.arange(n), epsilon)


def offworld_count(positions, world) -> int:
    if world.toroidal:
        return 0
    p = np.asarray(positions, dtype=float).reshape(-1, 2)
    inside = (p[:, 0] >= 0) & (p[:, 0] < world.width) & (p[:, 1] >= 0) & (p[:, 1] < world.height)
    return int((~inside).sum())


def sample(sim, epsilon: float = DEFAULT_EPSILON, proximity_only: bool = False) -> MetricSample:
    """All metrics for the current state of ``sim``."""
    w = sim.world
    n = sim.n
    # one neighbor search feeds every metric
    index = sim.index()
    offsets, nbrs = index.neighbor_lists(w.radius)
    rows = np.repeat(np.arange(n), np.diff(offsets))
    keep = rows < nbrs
    i, j = rows[keep], nbrs[keep]
    h = sim.headings
    lone = int((np.diff(offsets) == 0).sum())

    flocks = _flocks(n, i, j, h, epsilon, proximity_only) if n else 0

    rv = ~sim.influencer
    aligned = max_aligned_group(h[rv], epsilon)[0] if rv.any() else 0

    controlled = 0
    if sim.influencer.any() and rv.any():
        _, labels = _components(n, i, j)
        controlled = _controlled(labels, h, sim.influencer, sim.ids, epsilon)

    return MetricSample(
        step=int(sim.t),
        flock_count=flocks,
        lone_count=lone,
        lone_fraction=lone / n if n else 0.0,
        max_aligned_count=aligned,
        controlled_count=controlled,
        offworld_count=offworld_count(sim.positions, w),
    )


def _controlled(labels, headings, influencer, ids, epsilon):
    total = 0
    for lab in np.unique(labels[influencer]):
        members = np.flatnonzero(labels == lab)
        # id order keeps the circular mean independent of storage order
        members = members[np.argsort(ids[members], kind="stable")]
        inf = members[influencer[members]]
        rv = members[~influencer[members]]
        if rv.size == 0:
            continue
        try:
            ref = circular_mean(headings[inf].tolist())
        except DegenerateMeanError:
            ref = float(headings[inf[0]])
        total += int((np.abs(angle_diff_array(headings[rv], ref)) <= epsilon).sum())
    return total
