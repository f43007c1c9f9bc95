"""Planar and toroidal geometry helpers shared by the simulator and metrics.

Every scalar helper here is written so that it also compiles under numba;
the ``*_nb`` twins at the bottom are the jitted versions used by kernels,
and they agree with the Python versions bit for bit.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
from numba import njit

TWO_PI = 2.0 * math.pi


class DegenerateMeanError(ValueError):
    """Raised when a set of headings has a zero resultant vector."""


def normalize_angle(theta: float) -> float:
    """Map an angle into ``[0, 2*pi)``."""
    t = theta % TWO_PI
    # -tiny % 2pi rounds up to exactly 2pi
    if t >= TWO_PI:
        t = 0.0
    return t


def angle_diff(a: float, b: float) -> float:
    """Signed difference ``a - b`` wrapped into ``(-pi, pi]``.

    >>> angle_diff(math.pi, 0.0) == math.pi
    True
    """
    d = (a - b) % TWO_PI
    if d > math.pi:
        d -= TWO_PI
    return d


def wrap_coord(x: float, dim: float) -> float:
    w = x % dim
    if w >= dim:
        w = 0.0
    return w


def min_image(d: float, dim: float) -> float:
    """Reduce a coordinate difference into ``[-dim/2, dim/2)``."""
    half = 0.5 * dim
    if d >= half:
        d -= dim
    elif d < -half:
        d += dim
    if d >= half or d < -half:
        # only reached for points far outside the torus
        d -= dim * math.floor(d / dim + 0.5)
    return d


def wrap_position(p, world) -> np.ndarray:
    """Wrap a position onto the torus; identity for open worlds."""
    p = np.asarray(p, dtype=float)
    if not world.toroidal:
        return p.copy()
    return np.array([wrap_coord(float(p[0]), world.width), wrap_coord(float(p[1]), world.height)])


def torus_delta(a, b, world) -> np.ndarray:
    """Displacement ``b - a`` under the minimum-image convention."""
    dx = float(b[0]) - float(a[0])
    dy = float(b[1]) - float(a[1])
    if world.toroidal:
        dx = min_image(dx, world.width)
        dy = min_image(dy, world.height)
    return np.array([dx, dy])


def distance(a, b, world) -> float:
    d = torus_delta(a, b, world)
    return math.hypot(d[0], d[1])


def circular_mean(headings: Iterable[float]) -> float:
    """Direction of the summed unit vectors, in ``[0, 2*pi)``.

    Raises
    ------
    DegenerateMeanError
        If the resultant vector vanishes (e.g. two opposite headings).
    ValueError
        If ``headings`` is empty.
    """
    c = 0.0
    s = 0.0
    n = 0
    for h in headings:
        c += math.cos(h)
        s += math.sin(h)
        n += 1
    if n == 0:
        raise ValueError("circular_mean of an empty sequence")
    if math.hypot(c, s) <= 1e-12 * n:
        raise DegenerateMeanError("zero resultant vector")
    return normalize_angle(math.atan2(s, c))


def angle_diff_array(a, b) -> np.ndarray:
    """Vectorized :func:`angle_diff`, elementwise identical to the scalar form."""
    d = np.mod(np.asarray(a, dtype=float) - np.asarray(b, dtype=float), TWO_PI)
    return np.where(d > math.pi, d - TWO_PI, d)


def headings_to_velocities(headings: Sequence[float], speed: float) -> np.ndarray:
    h = np.asarray(headings, dtype=float)
    return speed * np.column_stack([np.cos(h), np.sin(h)])


normalize_angle_nb = njit(cache=True)(normalize_angle)
angle_diff_nb = njit(cache=True)(angle_diff)
wrap_coord_nb = njit(cache=True)(wrap_coord)
min_image_nb = njit(cache=True)(min_image)
