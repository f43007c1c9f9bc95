"""Fixed-radius neighbor search.

Agents are bucketed into cells at least ``cell_size`` wide with a counting
sort. On a torus the bucket table is dense (one bucket per cell); in open
worlds agents may drift arbitrarily far off the grid, so cells are hashed
into a table sized to the agent count and the distance test filters out
collisions.

Query results come back as CSR arrays ``(offsets, indices)``; each row is
sorted by agent id so that downstream floating point sums do not depend on
the storage order of agents.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .geometry import min_image_nb, wrap_coord_nb

_HX = 73856093
_HY = 19349663


@njit(cache=True)
def _cell_of(x, y, cw_x, cw_y, ncx, ncy, toroidal):
    cx = int(math.floor(x / cw_x))
    cy = int(math.floor(y / cw_y))
    if toroidal:
        cx = min(max(cx, 0), ncx - 1)
        cy = min(max(cy, 0), ncy - 1)
    return cx, cy


@njit(cache=True)
def _bucket(cx, cy, ncy, toroidal, mask):
    if toroidal:
        return cx * ncy + cy
    return ((cx * _HX) ^ (cy * _HY)) & mask


@njit(cache=True)
def _build_cells(pos, cw_x, cw_y, ncx, ncy, toroidal, n_buckets):
    n = pos.shape[0]
    mask = n_buckets - 1
    key = np.empty(n, np.int64)
    start = np.zeros(n_buckets + 1, np.int64)
    for i in range(n):
        cx, cy = _cell_of(pos[i, 0], pos[i, 1], cw_x, cw_y, ncx, ncy, toroidal)
        k = _bucket(cx, cy, ncy, toroidal, mask)
        key[i] = k
        start[k + 1] += 1
    for k in range(n_buckets):
        start[k + 1] += start[k]
    fill = start[:-1].copy()
    items = np.empty(n, np.int64)
    for i in range(n):
        items[fill[key[i]]] = i
        fill[key[i]] += 1
    return start, items


@njit(cache=True)
def _sort_row(idx, start, stop, ids):
    # insertion sort by id; rows are short
    for a in range(start + 1, stop):
        v = idx[a]
        k = ids[v]
        b = a - 1
        while b >= start and ids[idx[b]] > k:
            idx[b + 1] = idx[b]
            b -= 1
        idx[b + 1] = v


@njit(cache=True)
def _axis_cells(c, rings, n_axis, toroidal, out):
    m = 0
    if toroidal and 2 * rings + 1 >= n_axis:
        for q in range(n_axis):
            out[m] = q
            m += 1
    elif toroidal:
        for d in range(-rings, rings + 1):
            out[m] = (c + d) % n_axis
            m += 1
    else:
        for d in range(-rings, rings + 1):
            out[m] = c + d
            m += 1
    return m


@njit(cache=True)
def _grid_query(pos, ids, start, items, cw_x, cw_y, ncx, ncy, toroidal,
                width, height, centers, exclude, radius):
    m = centers.shape[0]
    r2 = radius * radius
    mask = start.shape[0] - 2
    rings_x = int(math.ceil(radius / cw_x))
    rings_y = int(math.ceil(radius / cw_y))
    xs = np.empty(max(2 * rings_x + 1, ncx), np.int64)
    ys = np.empty(max(2 * rings_y + 1, ncy), np.int64)
    seen = np.empty(xs.shape[0] * ys.shape[0], np.int64)
    counts = np.zeros(m, np.int64)
    offsets = np.zeros(m + 1, np.int64)
    idx = np.empty(0, np.int64)
    for fill in range(2):
        if fill == 1:
            for q in range(m):
                offsets[q + 1] = offsets[q] + counts[q]
            idx = np.empty(offsets[m], np.int64)
        for q in range(m):
            px = centers[q, 0]
            py = centers[q, 1]
            if toroidal:
                px = wrap_coord_nb(px, width)
                py = wrap_coord_nb(py, height)
            cx, cy = _cell_of(px, py, cw_x, cw_y, ncx, ncy, toroidal)
            nx = _axis_cells(cx, rings_x, ncx, toroidal, xs)
            ny = _axis_cells(cy, rings_y, ncy, toroidal, ys)
            w = offsets[q]
            c = 0
            n_seen = 0
            for a in range(nx):
                for b in range(ny):
                    k = _bucket(xs[a], ys[b], ncy, toroidal, mask)
                    if not toroidal:
                        # distinct cells may share a hash bucket
                        dup = False
                        for s in range(n_seen):
                            if seen[s] == k:
                                dup = True
                                break
                        if dup:
                            continue
                        seen[n_seen] = k
                        n_seen += 1
                    for t in range(start[k], start[k + 1]):
                        j = items[t]
                        if j == exclude[q]:
                            continue
                        dx = pos[j, 0] - px
                        dy = pos[j, 1] - py
                        if toroidal:
                            dx = min_image_nb(dx, width)
                            dy = min_image_nb(dy, height)
                        if dx * dx + dy * dy <= r2:
                            if fill == 1:
                                idx[w + c] = j
                            c += 1
            if fill == 0:
                counts[q] = c
            else:
                _sort_row(idx, offsets[q], offsets[q + 1], ids)
    return offsets, idx


@njit(cache=True)
def _brute_query(pos, ids, toroidal, width, height, centers, exclude, radius):
    m = centers.shape[0]
    n = pos.shape[0]
    r2 = radius * radius
    offsets = np.zeros(m + 1, np.int64)
    counts = np.zeros(m, np.int64)
    idx = np.empty(0, np.int64)
    for fill in range(2):
        if fill == 1:
            for q in range(m):
                offsets[q + 1] = offsets[q] + counts[q]
            idx = np.empty(offsets[m], np.int64)
        for q in range(m):
            px = centers[q, 0]
            py = centers[q, 1]
            c = 0
            for j in range(n):
                if j == exclude[q]:
                    continue
                dx = pos[j, 0] - px
                dy = pos[j, 1] - py
                if toroidal:
                    dx = min_image_nb(dx, width)
                    dy = min_image_nb(dy, height)
                if dx * dx + dy * dy <= r2:
                    if fill == 1:
                        idx[offsets[q] + c] = j
                    c += 1
            if fill == 0:
                counts[q] = c
            else:
                _sort_row(idx, offsets[q], offsets[q + 1], ids)
    return offsets, idx


@njit(cache=True)
def _pairs_to_csr(n, pi, pj, n_pairs, rank):
    """Directed CSR from undirected pairs, rows ordered by ``rank``."""
    m = 2 * n_pairs
    src = np.empty(m, np.int64)
    dst = np.empty(m, np.int64)
    for p in range(n_pairs):
        src[2 * p] = pi[p]
        dst[2 * p] = pj[p]
        src[2 * p + 1] = pj[p]
        dst[2 * p + 1] = pi[p]
    # stable counting sort by rank of the destination, then by source
    cnt = np.zeros(n + 1, np.int64)
    for e in range(m):
        cnt[rank[dst[e]] + 1] += 1
    for k in range(n):
        cnt[k + 1] += cnt[k]
    tmp = np.empty(m, np.int64)
    for e in range(m):
        r = rank[dst[e]]
        tmp[cnt[r]] = e
        cnt[r] += 1
    offsets = np.zeros(n + 1, np.int64)
    for e in range(m):
        offsets[src[e] + 1] += 1
    for k in range(n):
        offsets[k + 1] += offsets[k]
    fill = offsets[:-1].copy()
    idx = np.empty(m, np.int64)
    for t in range(m):
        e = tmp[t]
        s = src[e]
        idx[fill[s]] = dst[e]
        fill[s] += 1
    return offsets, idx


@njit(cache=True)
def _grid_pairs(pos, start, items, cw_x, cw_y, ncx, ncy, toroidal, width, height, radius):
    n = pos.shape[0]
    r2 = radius * radius
    mask = start.shape[0] - 2
    rings_x = int(math.ceil(radius / cw_x))
    rings_y = int(math.ceil(radius / cw_y))
    xs = np.empty(max(2 * rings_x + 1, ncx), np.int64)
    ys = np.empty(max(2 * rings_y + 1, ncy), np.int64)
    seen = np.empty(xs.shape[0] * ys.shape[0], np.int64)
    cap = 4 * n + 16
    pi = np.empty(cap, np.int64)
    pj = np.empty(cap, np.int64)
    n_pairs = 0
    for i in range(n):
        px = pos[i, 0]
        py = pos[i, 1]
        cx, cy = _cell_of(px, py, cw_x, cw_y, ncx, ncy, toroidal)
        nx = _axis_cells(cx, rings_x, ncx, toroidal, xs)
        ny = _axis_cells(cy, rings_y, ncy, toroidal, ys)
        n_seen = 0
        for a in range(nx):
            for b in range(ny):
                k = _bucket(xs[a], ys[b], ncy, toroidal, mask)
                if not toroidal:
                    dup = False
                    for s in range(n_seen):
                        if seen[s] == k:
                            dup = True
                            break
                    if dup:
                        continue
                    seen[n_seen] = k
                    n_seen += 1
                for t in range(start[k], start[k + 1]):
                    j = items[t]
                    if j <= i:
                        continue
                    dx = pos[j, 0] - px
                    dy = pos[j, 1] - py
                    if toroidal:
                        dx = min_image_nb(dx, width)
                        dy = min_image_nb(dy, height)
                    if dx * dx + dy * dy <= r2:
                        if n_pairs == cap:
                            cap *= 2
                            pi2 = np.empty(cap, np.int64)
                            pj2 = np.empty(cap, np.int64)
                            pi2[:n_pairs] = pi[:n_pairs]
                            pj2[:n_pairs] = pj[:n_pairs]
                            pi = pi2
                            pj = pj2
                        pi[n_pairs] = i
                        pj[n_pairs] = j
                        n_pairs += 1
    return pi, pj, n_pairs


class _IndexBase:
    def __init__(self, positions, world, ids=None):
        self.positions = np.ascontiguousarray(positions, dtype=np.float64).reshape(-1, 2)
        self.world = world
        n = self.positions.shape[0]
        self.ids = np.arange(n, dtype=np.int64) if ids is None else np.asarray(ids, dtype=np.int64)
        self.rank = np.empty(n, dtype=np.int64)
        self.rank[np.argsort(self.ids, kind="stable")] = np.arange(n)

    def __len__(self):
        return self.positions.shape[0]

    def _run(self, centers, exclude, radius):
        raise NotImplementedError

    def query(self, center, radius: float, exclude: int | None = None) -> np.ndarray:
        """Indices of agents within ``radius`` of ``center`` (inclusive)."""
        centers = np.asarray(center, dtype=np.float64).reshape(1, 2)
        excl = np.array([-1 if exclude is None else exclude], dtype=np.int64)
        _, idx = self._run(centers, excl, float(radius))
        return idx

    def neighbor_lists(self, radius: float, rows=None):
        """CSR neighbor lists around agents' own positions, excluding self.

        Parameters
        ----------
        radius : float
        rows : array_like of int, optional
            Restrict to these agents (in the given order). Defaults to all.

        Returns
        -------
        offsets, indices : ndarray
            Row ``q`` holds ``indices[offsets[q]:offsets[q+1]]``.
        """
        if rows is None:
            return self._all_pairs(float(radius))
        rows = np.asarray(rows, dtype=np.int64)
        centers = np.ascontiguousarray(self.positions[rows])
        return self._run(centers, rows, float(radius))

    def _all_pairs(self, radius):
        rows = np.arange(len(self), dtype=np.int64)
        return self._run(self.positions, rows, radius)


class SpatialIndex(_IndexBase):
    """Cell-list index over a fixed set of agent positions.

    Parameters
    ----------
    positions : (n, 2) array_like
    world : WorldSpec
    cell_size : float, optional
        Minimum cell width; defaults to the world's neighborhood radius.
    ids : (n,) array_like of int, optional
        Agent identifiers used to order query results.
    """

    def __init__(self, positions, world, cell_size: float | None = None, ids=None):
        super().__init__(positions, world, ids)
        self.cell_size = float(world.radius if cell_size is None else cell_size)
        if world.toroidal:
            self.ncx = max(1, int(world.width // self.cell_size))
            self.ncy = max(1, int(world.height // self.cell_size))
            self.cw_x = world.width / self.ncx
            self.cw_y = world.height / self.ncy
            n_buckets = self.ncx * self.ncy
        else:
            self.ncx = self.ncy = 0
            self.cw_x = self.cw_y = self.cell_size
            n_buckets = 64
            while n_buckets < 2 * len(self):
                n_buckets *= 2
        self._start, self._items = _build_cells(
            self.positions, self.cw_x, self.cw_y, self.ncx, self.ncy,
            world.toroidal, n_buckets)

    def _all_pairs(self, radius):
        w = self.world
        pi, pj, m = _grid_pairs(self.positions, self._start, self._items,
                                self.cw_x, self.cw_y, self.ncx, self.ncy, w.toroidal,
                                float(w.width), float(w.height), radius)
        return _pairs_to_csr(len(self), pi, pj, m, self.rank)

    def _run(self, centers, exclude, radius):
        w = self.world
        return _grid_query(
            self.positions, self.ids, self._start, self._items,
            self.cw_x, self.cw_y, self.ncx, self.ncy, w.toroidal,
            float(w.width), float(w.height), centers, exclude, radius)


class BruteForceIndex(_IndexBase):
    """O(n^2) reference with the same interface as :class:`SpatialIndex`."""

    def _run(self, centers, exclude, radius):
        w = self.world
        return _brute_query(self.positions, self.ids, w.toroidal,
                            float(w.width), float(w.height), centers, exclude, radius)


def build_index(positions, world, method: str = "grid", ids=None):
    if method == "grid":
        return SpatialIndex(positions, world, ids=ids)
    if method == "brute":
        return BruteForceIndex(positions, world, ids=ids)
    raise ValueError(f"unknown neighbor search method {method!r}")


def radius_query(index, center, radius: float, exclude: int | None = None) -> set[int]:
    """Ids of the agents within ``radius`` of ``center``.

    ``exclude`` names the querying agent (by index) when ``center`` is its
    own position.
    """
    return {int(index.ids[j]) for j in index.query(center, radius, exclude)}
