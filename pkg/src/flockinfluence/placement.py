"""Initial positions for Reynolds-Vicsek agents and influencers."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core.geometry import TWO_PI
from .core.world import HERD_START_RADIUS, WorldSpec

RANDOM = "random"
GRID = "grid"
KMEANS = "kmeans"
CIRCLE_RANDOM = "circle-random"
CIRCLE_GRID = "circle-grid"
CIRCLE_BORDER = "circle-border"

STRATEGIES = (RANDOM, GRID, KMEANS, CIRCLE_RANDOM, CIRCLE_GRID, CIRCLE_BORDER)
CIRCULAR = (CIRCLE_RANDOM, CIRCLE_GRID, CIRCLE_BORDER)

GOLDEN_RATIO = (1.0 + math.sqrt(5.0)) / 2.0
GOLDEN_ANGLE = TWO_PI / GOLDEN_RATIO**2


class UnknownStrategyError(ValueError):
    pass


def canonical_strategy(name: str) -> str:
    s = name.strip().lower().replace("_", "-")
    if s == "k-means":
        s = KMEANS
    if s not in STRATEGIES:
        raise UnknownStrategyError(f"unknown placement strategy {name!r}")
    return s


@dataclass(frozen=True)
class KMeansParams:
    max_iterations: int = 100
    tol: float = 1e-6

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass(frozen=True)
class PlacementSpec:
    """Where influencers start.

    ``origin`` defaults to the world center; ``radius`` only matters for
    the circular strategies.
    """

    strategy: str = GRID
    count: int = 0
    radius: float = 500.0
    origin: tuple | None = None
    kmeans: KMeansParams = field(default_factory=KMeansParams)

    def __post_init__(self):
        object.__setattr__(self, "strategy", canonical_strategy(self.strategy))
        if self.count < 0:
            raise ValueError("influencer count must be >= 0")
        if self.strategy in CIRCULAR and self.radius <= 0:
            raise ValueError("placement radius must be positive")


def place_random(k: int, rng: np.random.Generator, *, rect=None, disc=None) -> np.ndarray:
    """``k`` i.i.d. uniform points in a rectangle or a disc.

    Parameters
    ----------
    k : int
    rng : numpy.random.Generator
    rect : (width, height), optional
        Rectangle ``[0, width) x [0, height)``.
    disc : (origin, radius), optional
        Disc sampled area-uniformly (radius ``r * sqrt(u)``).
    """
    if (rect is None) == (disc is None):
        raise ValueError("give exactly one of rect or disc")
    if rect is not None:
        w, h = rect
        return np.column_stack([rng.uniform(0.0, w, k), rng.uniform(0.0, h, k)])
    origin, radius = disc
    rho = radius * np.sqrt(rng.uniform(0.0, 1.0, k))
    phi = rng.uniform(0.0, TWO_PI, k)
    return np.column_stack([origin[0] + rho * np.cos(phi), origin[1] + rho * np.sin(phi)])


def place_grid(k: int, world: WorldSpec) -> np.ndarray:
    """Cell centers of the smallest square lattice with at least ``k`` cells, row-major."""
    m = math.isqrt(k)
    if m * m < k:
        m += 1
    i = np.arange(k)
    x = (i % m + 0.5) * world.width / m
    y = (i // m + 0.5) * world.height / m
    return np.column_stack([x, y])


def place_circle_border(k: int, origin, radius: float) -> np.ndarray:
    a = TWO_PI * np.arange(k) / k
    return np.column_stack([origin[0] + radius * np.cos(a), origin[1] + radius * np.sin(a)])


def sunflower_polar(k: int, radius: float):
    """Polar coordinates ``(rho, phi)`` of the sunflower spiral, n = 1..k."""
    n = np.arange(1, k + 1)
    rho = radius / math.sqrt(k) * np.sqrt(n)
    phi = np.mod(GOLDEN_ANGLE * n, TWO_PI)
    return rho, phi


def place_sunflower(k: int, origin, radius: float) -> np.ndarray:
    rho, phi = sunflower_polar(k, radius)
    return np.column_stack([origin[0] + rho * np.cos(phi), origin[1] + rho * np.sin(phi)])


@dataclass
class KMeansResult:
    centers: np.ndarray
    labels: np.ndarray
    n_iter: int
    inertia: list


def _assign(points, centers):
    d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = d2.argmin(axis=1)
    return labels, d2[np.arange(points.shape[0]), labels]


def kmeans(points, k: int, rng: np.random.Generator, params: KMeansParams = KMeansParams()) -> KMeansResult:
    """Lloyd's algorithm seeded with uniform points in the bounding box.

    An empty cluster is reseeded on the point currently farthest from its
    center. ``inertia`` records the sum of squared distances after every
    iteration; it never increases.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if points.shape[0] == 0:
        raise ValueError("k-means needs at least one point")
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    centers = np.column_stack([rng.uniform(lo[0], hi[0], k), rng.uniform(lo[1], hi[1], k)])
    labels = None
    inertia = []
    n_iter = 0
    for n_iter in range(1, params.max_iterations + 1):
        new_labels, d2 = _assign(points, centers)
        counts = np.bincount(new_labels, minlength=k)
        for c in np.flatnonzero(counts == 0):
            far = int(d2.argmax())
            if d2[far] == 0.0:
                # fewer distinct points than clusters: park the center on a point
                centers[c] = points[far]
                continue
            counts[new_labels[far]] -= 1
            new_labels[far] = c
            d2[far] = 0.0
            counts[c] = 1
        new_centers = centers.copy()
        for c in range(k):
            members = points[new_labels == c]
            if members.shape[0]:
                new_centers[c] = members.mean(axis=0)
        shift = float(np.max(np.hypot(*(new_centers - centers).T)))
        centers = new_centers
        inertia.append(float(((points - centers[new_labels]) ** 2).sum()))
        stable = labels is not None and np.array_equal(labels, new_labels)
        labels = new_labels
        if stable or shift < params.tol:
            break
    return KMeansResult(centers, labels, n_iter, inertia)


def place_kmeans(k: int, rv_positions, rng: np.random.Generator,
                 params: KMeansParams = KMeansParams()) -> np.ndarray:
    return kmeans(rv_positions, k, rng, params).centers


def init_rv_agents(setting: str, n: int, rng: np.random.Generator, world: WorldSpec | None = None):
    """Positions and headings of ``n`` Reynolds-Vicsek agents.

    ``small`` and ``large`` scatter agents over the whole torus; ``herd``
    starts them in a disc of radius 500 about the world center.
    """
    world = world or WorldSpec.preset(setting)
    if setting == "herd":
        pos = place_random(n, rng, disc=(world.center, HERD_START_RADIUS))
    else:
        pos = place_random(n, rng, rect=(world.width, world.height))
    headings = rng.uniform(0.0, TWO_PI, n)
    return pos, headings


def place_influencers(spec: PlacementSpec, world: WorldSpec, rv_positions,
                      rng: np.random.Generator) -> np.ndarray:
    """Dispatch on ``spec.strategy``."""
    k = spec.count
    if k == 0:
        return np.empty((0, 2))
    origin = np.asarray(spec.origin if spec.origin is not None else world.center, dtype=float)
    s = spec.strategy
    if s == RANDOM:
        return place_random(k, rng, rect=(world.width, world.height))
    if s == GRID:
        return place_grid(k, world)
    if s == KMEANS:
        return place_kmeans(k, rv_positions, rng, spec.kmeans)
    if s == CIRCLE_RANDOM:
        return place_random(k, rng, disc=(origin, spec.radius))
    if s == CIRCLE_GRID:
        return place_sunflower(k, origin, spec.radius)
    return place_circle_border(k, origin, spec.radius)
