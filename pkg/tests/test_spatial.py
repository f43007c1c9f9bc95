import numpy as np
import pytest

from flockinfluence.core import BruteForceIndex, SpatialIndex, WorldSpec, build_index, radius_query

from oracles import brute_neighbors

WORLDS = [WorldSpec.small(), WorldSpec.large(), WorldSpec.herd()]


def test_radius_query_examples():
    w = WorldSpec.large()
    idx = build_index([(100, 100), (109, 100)], w)
    assert radius_query(idx, (100, 100), 10, exclude=0) == {1}
    assert radius_query(idx, (109, 100), 10, exclude=1) == {0}
    idx = build_index([(100, 100), (111, 100)], w)
    assert radius_query(idx, (100, 100), 10, exclude=0) == set()


def test_radius_is_inclusive_and_wraps():
    w = WorldSpec.large()
    idx = build_index([(995.0, 500.0), (5.0, 500.0)], w)
    assert radius_query(idx, (995.0, 500.0), 10.0, exclude=0) == {1}


def test_query_reports_ids():
    w = WorldSpec.large()
    idx = build_index([(1, 1), (2, 2), (3, 3)], w, ids=[30, 10, 20])
    assert radius_query(idx, (1, 1), 5, exclude=0) == {10, 20}


def test_200_random_agents_match_brute_force():
    w = WorldSpec.large()
    rng = np.random.default_rng(11)
    pos = rng.uniform(0, 1000, (200, 2))
    idx = build_index(pos, w)
    for i in range(200):
        assert set(idx.query(pos[i], 60, exclude=i)) == brute_neighbors(pos, pos[i], 60, w, i)


def test_index_oracle_1000_instances():
    """Grid index vs an independent O(n^2) scan on 1,000 random configurations."""
    rng = np.random.default_rng(2024)
    checked = 0
    for inst in range(1000):
        w = WORLDS[inst % 3]
        n = int(rng.integers(1, 60))
        if w.toroidal:
            pos = rng.uniform(0, w.width, (n, 2))
        else:
            # open worlds: cluster near the center with some far stragglers
            pos = rng.normal(2500, 40, (n, 2))
            pos[: n // 5] = rng.uniform(-3000, 8000, (n // 5, 2))
        radius = float(rng.choice([5.0, 10.0, 20.0]))
        if w is WORLDS[0]:
            # dense enough to produce neighbors
            pos = rng.uniform(0, 60, (n, 2))
        idx = build_index(pos, w)
        offsets, nbrs = idx.neighbor_lists(radius)
        for i in range(n):
            got = set(nbrs[offsets[i]:offsets[i + 1]].tolist())
            assert got == brute_neighbors(pos, pos[i], radius, w, i), (inst, i)
            checked += 1
        c = rng.uniform(0, w.width, 2)
        assert set(idx.query(c, radius).tolist()) == brute_neighbors(pos, c, radius, w)
    assert checked > 10_000


@pytest.mark.parametrize("world", WORLDS, ids=["small", "large", "herd"])
@pytest.mark.parametrize("radius", [5.0, 10.0, 20.0, 40.0])
def test_grid_equals_brute_index_exactly(world, radius):
    rng = np.random.default_rng(int(radius))
    n = 400
    if world.toroidal:
        pos = rng.uniform(0, world.width, (n, 2))
    else:
        pos = rng.normal(2500, 200, (n, 2))
    ids = rng.permutation(n)
    g = SpatialIndex(pos, world, ids=ids)
    b = BruteForceIndex(pos, world, ids=ids)
    for a, c in zip(g.neighbor_lists(radius), b.neighbor_lists(radius)):
        assert np.array_equal(a, c)
    rows = np.array([5, 3, 99])
    for a, c in zip(g.neighbor_lists(radius, rows), b.neighbor_lists(radius, rows)):
        assert np.array_equal(a, c)


def test_rows_are_sorted_by_id():
    w = WorldSpec.small()
    rng = np.random.default_rng(5)
    pos = rng.uniform(0, 40, (50, 2))
    ids = rng.permutation(50) * 3
    idx = build_index(pos, w, ids=ids)
    offsets, nbrs = idx.neighbor_lists(20.0)
    for i in range(50):
        row = ids[nbrs[offsets[i]:offsets[i + 1]]]
        assert np.all(np.diff(row) > 0)


def test_cell_size_override_and_unknown_method():
    w = WorldSpec.large()
    pos = np.random.default_rng(0).uniform(0, 1000, (300, 2))
    a = SpatialIndex(pos, w, cell_size=37.0).neighbor_lists(10.0)
    b = SpatialIndex(pos, w).neighbor_lists(10.0)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    with pytest.raises(ValueError):
        build_index(pos, w, method="kdtree")


def test_empty_index():
    idx = build_index(np.empty((0, 2)), WorldSpec.large())
    offsets, nbrs = idx.neighbor_lists(10.0)
    assert offsets.tolist() == [0] and nbrs.size == 0
    assert idx.query((1, 1), 10).size == 0
