import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from flockinfluence.core import (DegenerateMeanError, SimState, WorldSpec, angle_diff,
                                 circular_mean, distance, normalize_angle, rv_next_heading, step,
                                 torus_delta, wrap_position)
from flockinfluence.core.geometry import angle_diff_array, min_image
from flockinfluence.core.sim import advance_position, run

from oracles import TWO_PI, torus_dist, vicsek, wrapped_diff

LARGE = WorldSpec.large()
OPEN = WorldSpec(1000.0, 1000.0, "open")
angles = st.floats(-50.0, 50.0, allow_nan=False)


# -- world presets ----------------------------------------------------------

def test_presets():
    s, l, h = WorldSpec.small(), WorldSpec.large(), WorldSpec.herd()
    assert (s.width, s.height, s.toroidal, s.radius) == (150, 150, True, 20)
    assert (l.width, l.height, l.toroidal, l.radius) == (1000, 1000, True, 10)
    assert (h.width, h.height, h.toroidal, h.radius) == (5000, 5000, False, 10)
    for w in (s, l, h):
        assert w.speed == 0.7
        assert w.sensing_radius == 2 * w.radius


@pytest.mark.parametrize("kw", [dict(width=0, height=1), dict(width=1, height=1, radius=0),
                                dict(width=1, height=1, speed=-1),
                                dict(width=1, height=1, topology="klein")])
def test_world_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        WorldSpec(**kw)


# -- wrap_position / torus_delta / distance ---------------------------------

def test_wrap_position_examples():
    assert np.allclose(wrap_position((999.9 + 0.7, 500), LARGE), (0.6, 500), atol=1e-9)
    assert np.array_equal(wrap_position((500, 500), LARGE), (500, 500))
    assert np.allclose(wrap_position((-0.2, 1000.0), LARGE), (999.8, 0.0), atol=1e-9)
    assert np.array_equal(wrap_position((-5, 7000), OPEN), (-5, 7000))


def test_torus_delta_examples():
    assert np.array_equal(torus_delta((10, 10), (990, 10), LARGE), (-20, 0))
    assert np.array_equal(torus_delta((3, 4), (3, 4), LARGE), (0, 0))
    assert np.array_equal(torus_delta((10, 10), (990, 10), OPEN), (980, 0))


def test_distance_examples():
    assert distance((10, 10), (990, 10), LARGE) == pytest.approx(20, abs=1e-9)
    assert distance((7, 7), (7, 7), LARGE) == 0
    assert distance((0, 0), (3, 4), OPEN) == pytest.approx(5, abs=1e-9)


@given(st.floats(-5000, 5000), st.floats(1, 2000))
def test_min_image_range(d, dim):
    m = min_image(d, dim)
    assert -dim / 2 <= m < dim / 2
    # same residue class
    k = (d - m) / dim
    assert abs(k - round(k)) < 1e-6


def test_torus_metric_on_random_triples():
    rng = np.random.default_rng(0)
    pts = rng.uniform(0, 1000, (1000, 3, 2))
    for a, b, c in pts:
        ab, ba = distance(a, b, LARGE), distance(b, a, LARGE)
        assert ab == ba
        assert ab == pytest.approx(torus_dist(a, b, 1000, 1000), abs=1e-9)
        assert ab <= distance(a, c, LARGE) + distance(c, b, LARGE) + 1e-9


# -- angles -----------------------------------------------------------------

def test_angle_diff_examples():
    assert angle_diff(0.1, TWO_PI - 0.1) == pytest.approx(0.2, abs=1e-9)
    assert angle_diff(1.3, 1.3) == 0.0
    assert angle_diff(math.pi, 0.0) == math.pi


@given(angles, angles)
def test_angle_diff_range_and_oracle(a, b):
    d = angle_diff(a, b)
    assert -math.pi < d <= math.pi
    assert d == pytest.approx(wrapped_diff(a, b), abs=1e-9)
    assert angle_diff_array([a], [b])[0] == d


@given(angles)
def test_normalize_angle_range(a):
    assert 0.0 <= normalize_angle(a) < TWO_PI


def test_normalize_tiny_negative_maps_to_zero():
    # -1e-17 % 2pi rounds to exactly 2pi in floating point
    assert normalize_angle(-1e-17) == 0.0


def test_circular_mean_examples():
    assert circular_mean([0, math.pi / 2]) == pytest.approx(math.pi / 4, abs=1e-9)
    assert circular_mean([math.pi / 6, math.pi / 6]) == pytest.approx(math.pi / 6, abs=1e-9)
    with pytest.raises(DegenerateMeanError):
        circular_mean([0, math.pi])
    with pytest.raises(ValueError):
        circular_mean([])


# -- Reynolds-Vicsek update -------------------------------------------------

def test_rv_next_heading_examples():
    assert rv_next_heading(1.0, []) == 1.0
    assert rv_next_heading(0.0, [math.pi / 2]) == pytest.approx(math.pi / 4, abs=1e-9)
    assert rv_next_heading(0.1, [TWO_PI - 0.1]) == pytest.approx(0.0, abs=1e-9)


@given(angles, st.lists(st.floats(-0.3, 0.3), min_size=1, max_size=8))
def test_rv_next_heading_matches_unit_vector_mean_for_small_spreads(theta, offsets):
    # for tightly clustered headings wrapped averaging and vector averaging agree
    nbrs = [theta + o for o in offsets]
    got = rv_next_heading(theta, nbrs)
    assert 0.0 <= got < TWO_PI
    assert abs(wrapped_diff(got, vicsek(theta, nbrs))) < 1e-9
    half = theta + 0.5 * wrapped_diff(circular_mean(nbrs), theta)
    assert abs(wrapped_diff(got, half)) < 0.01


def test_advance_position_examples():
    w = WorldSpec(1000.0, 1000.0)
    assert np.allclose(advance_position((0, 0), 0.0, w), (0.7, 0), atol=1e-12)
    assert np.allclose(advance_position((0, 0), math.pi / 2, w), (0, 0.7), atol=1e-12)
    assert np.allclose(advance_position((999.9, 500), 0.0, w), (0.6, 500), atol=1e-9)


# -- step -------------------------------------------------------------------

def _rv_sim(pos, headings, world=LARGE, ids=None):
    return SimState(world, pos, headings, np.zeros(len(headings), bool), ids)


def test_step_pair_moves_along_new_heading():
    sim = _rv_sim([(100, 100), (105, 100)], [0.0, math.pi / 2])
    nxt = step(sim)
    assert np.allclose(nxt.headings, math.pi / 4, atol=1e-12)
    d = 0.7 * math.sqrt(0.5)
    assert np.allclose(nxt.positions, [(100 + d, 100 + d), (105 + d, 100 + d)], atol=1e-9)
    assert nxt.t == 1
    # pure: the input is untouched
    assert sim.t == 0 and sim.headings[1] == math.pi / 2


def test_step_lone_agent_straight_line():
    sim = _rv_sim([(10, 10)], [0.3])
    run(sim, None, 1000)
    expect = np.array([10 + 700 * math.cos(0.3), 10 + 700 * math.sin(0.3)]) % 1000
    assert np.allclose(sim.positions[0], expect, atol=1e-6)
    assert sim.headings[0] == 0.3


def test_step_permutation_equivariance():
    rng = np.random.default_rng(3)
    n = 200
    pos = rng.uniform(0, 150, (n, 2))
    h = rng.uniform(0, TWO_PI, n)
    a = _rv_sim(pos, h, WorldSpec.small())
    perm = rng.permutation(n)
    b = _rv_sim(pos[perm], h[perm], WorldSpec.small(), ids=perm)
    run(a, None, 50)
    run(b, None, 50)
    inv = np.argsort(perm)
    assert np.array_equal(a.headings, b.headings[inv])
    assert np.array_equal(a.positions, b.positions[inv])


def test_constant_speed_and_heading_range():
    rng = np.random.default_rng(4)
    w = WorldSpec.small()
    sim = _rv_sim(rng.uniform(0, 150, (60, 2)), rng.uniform(0, TWO_PI, 60), w)
    for _ in range(100):
        before = sim.positions.copy()
        sim = step(sim)
        d = np.array([torus_delta(p, q, w) for p, q in zip(before, sim.positions)])
        assert np.allclose(np.hypot(d[:, 0], d[:, 1]), 0.7, atol=1e-9)
        assert np.all((sim.headings >= 0) & (sim.headings < TWO_PI))


@settings(max_examples=50)
@given(st.floats(0, TWO_PI, exclude_max=True), st.floats(0, TWO_PI, exclude_max=True),
       st.floats(0.0, 9.9))
def test_isolated_pair_aligns_in_one_step(a, b, gap):
    assume(abs(angle_diff(a, b)) < math.pi)
    sim = _rv_sim([(500, 500), (500 + gap, 500)], [a, b])
    nxt = step(sim)
    assert abs(angle_diff(nxt.headings[0], nxt.headings[1])) < 1e-9


def test_antipodal_pair_both_turn_counterclockwise():
    # both differences wrap to +pi, so the pair rotates together and stays opposite
    sim = _rv_sim([(500, 500), (505, 500)], [0.0, math.pi])
    nxt = step(sim)
    assert np.allclose(nxt.headings, [math.pi / 2, 3 * math.pi / 2], atol=1e-12)


def test_open_world_agents_are_never_removed():
    w = WorldSpec.herd()
    sim = _rv_sim([(4999.0, 2500.0)], [0.0], w)
    run(sim, None, 10)
    assert sim.n == 1
    assert sim.positions[0, 0] == pytest.approx(5006.0)


def test_agents_view():
    sim = SimState(LARGE, [(1, 2), (3, 4)], [0.5, 1.5], [False, True], ids=[7, 3])
    agents = sim.agents
    assert [a.id for a in agents] == [7, 3]
    assert [a.kind for a in agents] == ["rv", "influencer"]
    with pytest.raises(ValueError):
        SimState(LARGE, [(1, 2)], [0.5, 1.0], None)
