"""Heading controllers for influencing agents.

Traveling behaviors (``face``, ``offset-momentum``, ``lookahead``,
``coordinated``) steer toward a goal heading. ``multistep`` follows the
flock until enough Reynolds-Vicsek agents are connected to the
influencers, then switches to a traveling behavior aimed at the mean
heading of that connected mass. Stationary behaviors (``circle``,
``polygon``, ``multicircle``) orbit an origin in open worlds.

A :class:`BehaviorSpec` is immutable; everything that evolves during a run
(pairings, latches, polygon targets, circling stages) lives in a phase
object stored on :attr:`SimState.phase`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numba import njit

from .core.geometry import (
    TWO_PI,
    DegenerateMeanError,
    angle_diff_nb,
    circular_mean,
    min_image,
    normalize_angle,
    normalize_angle_nb,
)

FACE = "face"
OFFSET_MOMENTUM = "offset-momentum"
LOOKAHEAD = "lookahead"
COORDINATED = "coordinated"
MULTISTEP = "multistep"
CIRCLE = "circle"
POLYGON = "polygon"
MULTICIRCLE = "multicircle"

TRAVELING = (FACE, OFFSET_MOMENTUM, LOOKAHEAD, COORDINATED)
STATIONARY = (CIRCLE, POLYGON, MULTICIRCLE)
KINDS = TRAVELING + (MULTISTEP,) + STATIONARY

DEFAULT_CANDIDATES = {LOOKAHEAD: 64, COORDINATED: 16}

# objective values closer than this count as ties (lowest index wins)
TIE_TOL = 1e-12

# multicircle stages
CIRCLING_INITIAL = 0
FOLLOWING = 1
CIRCLING_FINAL = 2
STAGE_NAMES = ("CIRCLING_INITIAL", "FOLLOWING", "CIRCLING_FINAL")


class UnknownBehaviorError(ValueError):
    pass


class UndefinedTangentError(ValueError):
    """An agent sits exactly on the circling origin."""


def canonical_kind(name: str) -> str:
    k = name.strip().lower().replace("_", "-")
    if k == "one-step-lookahead":
        k = LOOKAHEAD
    if k not in KINDS:
        raise UnknownBehaviorError(f"unknown behavior {name!r}")
    return k


@dataclass(frozen=True)
class BehaviorSpec:
    """Which controller influencers run, and its parameters.

    Parameters
    ----------
    kind : str
        One of :data:`KINDS`.
    goal : float
        Goal heading for traveling behaviors.
    second_stage : str
        Traveling behavior adopted by ``multistep`` after it latches.
    threshold : int, optional
        Connected-agent count that triggers the ``multistep`` latch. When
        omitted it is ``ceil(threshold_frac * N_RV)``.
    threshold_frac : float
    candidates : int, optional
        Headings tried per agent by ``lookahead``/``coordinated``
        (default 64 and 16 respectively).
    circle_radius : float, optional
        Fixed circling/polygon radius. By default every influencer keeps
        its starting distance from the origin.
    polygon_sides : int
    final_radius : float
        Circling radius of the last ``multicircle`` stage.
    origin : (float, float), optional
        Center for stationary behaviors; defaults to the world center.
    include_influencer_headings : bool
        Whether the ``multistep`` latch direction averages the influencers'
        own headings together with the connected agents'.
    """

    kind: str = FACE
    goal: float = 0.0
    second_stage: str = FACE
    threshold: int | None = None
    threshold_frac: float = 0.5
    candidates: int | None = None
    circle_radius: float | None = None
    polygon_sides: int = 10
    final_radius: float = 900.0
    origin: tuple | None = None
    include_influencer_headings: bool = True

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        object.__setattr__(self, "second_stage", canonical_kind(self.second_stage))
        object.__setattr__(self, "goal", normalize_angle(float(self.goal)))
        if self.second_stage not in TRAVELING:
            raise UnknownBehaviorError(
                f"multistep second stage must be traveling, got {self.second_stage!r}")
        if self.candidates is not None and self.candidates < 2:
            raise ValueError("candidates must be >= 2")
        if self.polygon_sides < 3:
            raise ValueError("polygon needs at least 3 sides")
        if self.threshold is not None and self.threshold < 1:
            raise ValueError("threshold must be >= 1")
        if self.circle_radius is not None and self.circle_radius <= 0:
            raise ValueError("circle radius must be positive")
        if self.circle_radius is not None and self.final_radius <= self.circle_radius:
            raise ValueError("final radius must exceed the circle radius")

    @classmethod
    def from_name(cls, name: str, **kwargs) -> "BehaviorSpec":
        """Build from a name such as ``"lookahead"`` or ``"multistep:coordinated"``."""
        kind, _, second = name.partition(":")
        kind = canonical_kind(kind)
        if second:
            if kind != MULTISTEP:
                raise UnknownBehaviorError(f"only multistep takes a second stage: {name!r}")
            kwargs["second_stage"] = second
        return cls(kind=kind, **kwargs)

    @property
    def name(self) -> str:
        if self.kind == MULTISTEP:
            return f"{MULTISTEP}:{self.second_stage}"
        return self.kind

    def n_candidates(self, kind: str | None = None) -> int:
        if self.candidates is not None:
            return self.candidates
        return DEFAULT_CANDIDATES.get(kind or self.kind, 64)

    def with_goal(self, goal: float) -> "BehaviorSpec":
        return replace(self, goal=goal)

    def init_phase(self, sim):
        return init_phase(self, sim)

    def act(self, sim, view) -> np.ndarray:
        return act(self, sim, view)


# ---------------------------------------------------------------------------
# scalar behaviors

def act_face(spec: BehaviorSpec) -> float:
    return spec.goal


def act_offset_momentum(neighbor_velocities, goal: float, speed: float) -> float:
    """Heading whose velocity, added to the neighbors' mean, points at ``goal``."""
    v = np.asarray(neighbor_velocities, dtype=float).reshape(-1, 2)
    if v.shape[0] == 0:
        return normalize_angle(goal)
    ox = speed * math.cos(goal) - v[:, 0].mean()
    oy = speed * math.sin(goal) - v[:, 1].mean()
    if math.hypot(ox, oy) <= 1e-12:
        return normalize_angle(goal)
    return normalize_angle(math.atan2(oy, ox))


def candidate_headings(goal: float, n: int) -> np.ndarray:
    """``n`` evenly spaced headings anchored at ``goal`` (index 0 is the goal)."""
    return np.array([normalize_angle(goal + k * TWO_PI / n) for k in range(n)])


def act_circle(position, origin, target_radius: float, speed: float) -> float:
    """Counterclockwise circling: head for the point one step of arc ahead.

    Raises
    ------
    UndefinedTangentError
        If ``position`` coincides with ``origin``.
    """
    dx = position[0] - origin[0]
    dy = position[1] - origin[1]
    if dx == 0.0 and dy == 0.0:
        raise UndefinedTangentError("position is at the circling origin")
    return _circle_heading(position[0], position[1], origin[0], origin[1], target_radius, speed)


def _circle_heading(px, py, ox, oy, radius, speed):
    alpha = math.atan2(py - oy, px - ox)
    beta = alpha + speed / radius
    wx = ox + radius * math.cos(beta)
    wy = oy + radius * math.sin(beta)
    return normalize_angle_nb(math.atan2(wy - py, wx - px))


_circle_heading_nb = njit(cache=True)(_circle_heading)


def polygon_vertex(origin, radius: float, sides: int, k: int) -> np.ndarray:
    a = TWO_PI * (k % sides) / sides
    return np.array([origin[0] + radius * math.cos(a), origin[1] + radius * math.sin(a)])


def first_polygon_target(position, origin, sides: int) -> int:
    """Next vertex counterclockwise from the agent's polar angle."""
    alpha = normalize_angle(math.atan2(position[1] - origin[1], position[0] - origin[0]))
    return (int(math.floor(alpha / (TWO_PI / sides))) + 1) % sides


def act_polygon(target: int, origin, radius: float, sides: int, speed: float, position):
    """Head for the current vertex, moving on once it is within one step.

    Returns
    -------
    heading : float
    target : int
        Possibly advanced vertex index.
    """
    v = polygon_vertex(origin, radius, sides, target)
    if math.hypot(v[0] - position[0], v[1] - position[1]) <= speed:
        target = (target + 1) % sides
        v = polygon_vertex(origin, radius, sides, target)
    return normalize_angle(math.atan2(v[1] - position[1], v[0] - position[0])), target


# ---------------------------------------------------------------------------
# lookahead kernels

@njit(cache=True)
def _local_terms(headings, offsets, nbrs, is_inf, a, b, mark):
    """Per-neighbor pieces of the simulated alignment update.

    For every Reynolds-Vicsek agent ``j`` adjacent to ``a`` or ``b``:
    its heading, neighbor count, the summed wrapped differences to all its
    neighbors other than ``a``/``b``, and whether ``a``/``b`` are among its
    neighbors. Every neighbor of ``j`` lies within twice the radius of the
    influencer, so this uses only what the influencer can sense.
    """
    m = 0
    cap = offsets[a + 1] - offsets[a]
    if b >= 0:
        cap += offsets[b + 1] - offsets[b]
    js = np.empty(cap, np.int64)
    for src in (a, b):
        if src < 0:
            continue
        for t in range(offsets[src], offsets[src + 1]):
            j = nbrs[t]
            if not is_inf[j] and not mark[j]:
                mark[j] = True
                js[m] = j
                m += 1
    th = np.empty(m)
    base = np.empty(m)
    deg = np.empty(m)
    fa = np.zeros(m)
    fb = np.zeros(m)
    for e in range(m):
        j = js[e]
        mark[j] = False
        hj = headings[j]
        th[e] = hj
        deg[e] = offsets[j + 1] - offsets[j]
        acc = 0.0
        for t in range(offsets[j], offsets[j + 1]):
            k = nbrs[t]
            if k == a:
                fa[e] = 1.0
            elif k == b:
                fb[e] = 1.0
            else:
                acc += angle_diff_nb(headings[k], hj)
        base[e] = acc
    return th, base, deg, fa, fb


@njit(cache=True)
def _diff_table(th, cands):
    m = th.shape[0]
    k = cands.shape[0]
    out = np.empty((m, k))
    for e in range(m):
        for c in range(k):
            out[e, c] = angle_diff_nb(cands[c], th[e])
    return out


@njit(cache=True)
def _objective(th, base, deg, fa, fb, da, db, ca, cb, goal):
    total = 0.0
    m = th.shape[0]
    for e in range(m):
        acc = base[e]
        if fa[e] != 0.0:
            acc += da[e, ca]
        if fb[e] != 0.0:
            acc += db[e, cb]
        nxt = normalize_angle_nb(th[e] + 0.5 * acc / deg[e])
        total += abs(angle_diff_nb(nxt, goal))
    return total / m


@njit(cache=True)
def lookahead_kernel(headings, offsets, nbrs, is_inf, agents, goal, cands, tie_tol):
    """Best candidate heading for each influencer in ``agents``."""
    mark = np.zeros(headings.shape[0], np.bool_)
    out = np.empty(agents.shape[0])
    for s in range(agents.shape[0]):
        a = agents[s]
        th, base, deg, fa, fb = _local_terms(headings, offsets, nbrs, is_inf, a, -1, mark)
        if th.shape[0] == 0:
            out[s] = goal
            continue
        da = _diff_table(th, cands)
        best = 0
        best_obj = _objective(th, base, deg, fa, fb, da, da, 0, 0, goal)
        for c in range(1, cands.shape[0]):
            obj = _objective(th, base, deg, fa, fb, da, da, c, 0, goal)
            if obj < best_obj - tie_tol:
                best = c
                best_obj = obj
        out[s] = cands[best]
    return out


@njit(cache=True)
def coordinated_kernel(headings, offsets, nbrs, is_inf, pairs, goal, cands, tie_tol):
    """Joint best candidate pair for each row ``(a, b)`` of ``pairs``."""
    mark = np.zeros(headings.shape[0], np.bool_)
    out = np.empty((pairs.shape[0], 2))
    k = cands.shape[0]
    for p in range(pairs.shape[0]):
        a = pairs[p, 0]
        b = pairs[p, 1]
        th, base, deg, fa, fb = _local_terms(headings, offsets, nbrs, is_inf, a, b, mark)
        if th.shape[0] == 0:
            out[p, 0] = goal
            out[p, 1] = goal
            continue
        dt = _diff_table(th, cands)
        best_a = 0
        best_b = 0
        best_obj = np.inf
        for ca in range(k):
            for cb in range(k):
                obj = _objective(th, base, deg, fa, fb, dt, dt, ca, cb, goal)
                if obj < best_obj - tie_tol:
                    best_a = ca
                    best_b = cb
                    best_obj = obj
        out[p, 0] = cands[best_a]
        out[p, 1] = cands[best_b]
    return out


@njit(cache=True)
def offset_momentum_kernel(headings, offsets, nbrs, agents, goal, speed):
    out = np.empty(agents.shape[0])
    gx = speed * math.cos(goal)
    gy = speed * math.sin(goal)
    for s in range(agents.shape[0]):
        a = agents[s]
        n = offsets[a + 1] - offsets[a]
        if n == 0:
            out[s] = goal
            continue
        vx = 0.0
        vy = 0.0
        for t in range(offsets[a], offsets[a + 1]):
            h = headings[nbrs[t]]
            vx += speed * math.cos(h)
            vy += speed * math.sin(h)
        ox = gx - vx / n
        oy = gy - vy / n
        if math.hypot(ox, oy) <= 1e-12:
            out[s] = goal
        else:
            out[s] = normalize_angle_nb(math.atan2(oy, ox))
    return out


@njit(cache=True)
def connected_counts_kernel(offsets, nbrs, is_inf, agents, s_off, s_nbrs, reached):
    """Reynolds-Vicsek agents path-connected to each influencer.

    The search only walks through agents inside the influencer's sensing
    ball (row ``s`` of ``s_off``/``s_nbrs``). ``reached`` is set for every
    Reynolds-Vicsek agent reached by any influencer.
    """
    n = is_inf.shape[0]
    visible = np.zeros(n, np.bool_)
    seen = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    counts = np.zeros(agents.shape[0], np.int64)
    for s in range(agents.shape[0]):
        a = agents[s]
        for t in range(s_off[s], s_off[s + 1]):
            visible[s_nbrs[t]] = True
        head = 0
        tail = 1
        queue[0] = a
        seen[a] = True
        c = 0
        while head < tail:
            u = queue[head]
            head += 1
            for t in range(offsets[u], offsets[u + 1]):
                v = nbrs[t]
                if visible[v] and not seen[v]:
                    seen[v] = True
                    queue[tail] = v
                    tail += 1
                    if not is_inf[v]:
                        c += 1
                        reached[v] = True
        counts[s] = c
        for q in range(tail):
            seen[queue[q]] = False
        for t in range(s_off[s], s_off[s + 1]):
            visible[s_nbrs[t]] = False
    return counts


@njit(cache=True)
def circle_kernel(pos, headings, agents, ox, oy, radii, speed):
    out = np.empty(agents.shape[0])
    for s in range(agents.shape[0]):
        a = agents[s]
        px = pos[a, 0]
        py = pos[a, 1]
        if (px == ox and py == oy) or radii[s] <= 0.0:
            out[s] = headings[a]
        else:
            out[s] = _circle_heading_nb(px, py, ox, oy, radii[s], speed)
    return out


# ---------------------------------------------------------------------------
# public wrappers over the kernels

def _csr(sim, view=None):
    if view is not None:
        return view.offsets, view.nbrs
    return sim.index().neighbor_lists(sim.world.radius)


def act_lookahead(sim, agent: int, goal: float, candidates: int = 64, view=None) -> float:
    """One-step lookahead heading for influencer ``agent`` (storage index)."""
    offsets, nbrs = _csr(sim, view)
    cands = candidate_headings(goal, candidates)
    return float(lookahead_kernel(sim.headings, offsets, nbrs, sim.influencer,
                                  np.array([agent], np.int64), normalize_angle(goal),
                                  cands, TIE_TOL)[0])


def act_coordinated(sim, pair, goal: float, candidates: int = 16, view=None):
    """Jointly optimal headings for a pair of influencers."""
    offsets, nbrs = _csr(sim, view)
    cands = candidate_headings(goal, candidates)
    out = coordinated_kernel(sim.headings, offsets, nbrs, sim.influencer,
                             np.array([pair], np.int64).reshape(1, 2), normalize_angle(goal),
                             cands, TIE_TOL)
    return float(out[0, 0]), float(out[0, 1])


def local_connected_count(sim, agent: int) -> int:
    """RV agents reachable from ``agent`` within its sensing radius."""
    index = sim.index()
    offsets, nbrs = index.neighbor_lists(sim.world.radius)
    s_off, s_nbrs = index.neighbor_lists(sim.world.sensing_radius, [agent])
    reached = np.zeros(sim.n, np.bool_)
    return int(connected_counts_kernel(offsets, nbrs, sim.influencer,
                                       np.array([agent], np.int64), s_off, s_nbrs, reached)[0])


def pair_influencers(positions, world=None):
    """Greedy closest-first matching.

    Parameters
    ----------
    positions : (k, 2) array_like
    world : WorldSpec, optional
        Used for minimum-image distances on a torus.

    Returns
    -------
    pairs : list of (int, int)
        Indices into ``positions``; the lower index first.
    leftover : list of int
        The unmatched index when ``k`` is odd.
    """
    p = np.asarray(positions, dtype=float).reshape(-1, 2)
    k = p.shape[0]
    cand = []
    for i in range(k):
        for j in range(i + 1, k):
            dx = p[j, 0] - p[i, 0]
            dy = p[j, 1] - p[i, 1]
            if world is not None and world.toroidal:
                dx = min_image(dx, world.width)
                dy = min_image(dy, world.height)
            cand.append((dx * dx + dy * dy, i, j))
    cand.sort()
    used = np.zeros(k, dtype=bool)
    pairs = []
    for _, i, j in cand:
        if not used[i] and not used[j]:
            used[i] = used[j] = True
            pairs.append((i, j))
    return pairs, [int(i) for i in np.flatnonzero(~used)]


# ---------------------------------------------------------------------------
# phases

@dataclass
class Pairing:
    """Coordinated pairs as influencer slots, plus an unmatched slot."""

    pairs: np.ndarray
    solo: np.ndarray


@dataclass
class TravelPhase:
    pairing: Pairing | None = None

    def agent_phase(self, slot):
        return None


@dataclass
class MultistepPhase:
    threshold: int
    latched: bool = False
    theta_bar: float | None = None
    latch_step: int | None = None
    last_sum: int = 0
    pairing: Pairing | None = None

    def agent_phase(self, slot):
        return ("INFLUENCE", self.theta_bar) if self.latched else ("FOLLOW", None)


@dataclass
class OrbitPhase:
    """State for circle, polygon and multicircle."""

    origin: np.ndarray
    radii: np.ndarray
    targets: np.ndarray | None = None
    stages: np.ndarray | None = None

    def agent_phase(self, slot):
        if self.stages is not None:
            return STAGE_NAMES[int(self.stages[slot])]
        if self.targets is not None:
            return int(self.targets[slot])
        return None


def _pairing(sim) -> Pairing:
    inf = sim.influencer_idx
    pairs, left = pair_influencers(sim.positions[inf], sim.world)
    return Pairing(np.array(pairs, dtype=np.int64).reshape(-1, 2),
                   np.array(left, dtype=np.int64))


def _origin(spec, sim) -> np.ndarray:
    return np.asarray(spec.origin if spec.origin is not None else sim.world.center, dtype=float)


def init_phase(spec: BehaviorSpec, sim):
    """Phase data for a run, derived from the positions at the current step."""
    if spec.kind in (FACE, OFFSET_MOMENTUM, LOOKAHEAD):
        return TravelPhase()
    if spec.kind == COORDINATED:
        return TravelPhase(_pairing(sim))
    if spec.kind == MULTISTEP:
        n_rv = int((~sim.influencer).sum())
        t = spec.threshold
        if t is None:
            t = max(1, math.ceil(spec.threshold_frac * n_rv))
        pairing = _pairing(sim) if spec.second_stage == COORDINATED else None
        return MultistepPhase(threshold=int(t), pairing=pairing)
    origin = _origin(spec, sim)
    inf = sim.influencer_idx
    if spec.circle_radius is not None:
        radii = np.full(inf.size, float(spec.circle_radius))
    else:
        d = sim.positions[inf] - origin
        radii = np.hypot(d[:, 0], d[:, 1])
    phase = OrbitPhase(origin, radii)
    if spec.kind == POLYGON:
        phase.targets = np.array([first_polygon_target(sim.positions[a], origin, spec.polygon_sides)
                                  for a in inf], dtype=np.int64)
    elif spec.kind == MULTICIRCLE:
        phase.stages = np.full(inf.size, CIRCLING_INITIAL, dtype=np.int64)
    return phase


# ---------------------------------------------------------------------------
# per-step dispatch

def _traveling(kind, spec, sim, view, goal, pairing):
    inf = sim.influencer_idx
    if kind == FACE:
        return np.full(inf.size, goal)
    if kind == OFFSET_MOMENTUM:
        return offset_momentum_kernel(sim.headings, view.offsets, view.nbrs, inf, goal,
                                      sim.world.speed)
    cands = candidate_headings(goal, spec.n_candidates(kind))
    if kind == LOOKAHEAD:
        return lookahead_kernel(sim.headings, view.offsets, view.nbrs, sim.influencer,
                                inf, goal, cands, TIE_TOL)
    out = np.empty(inf.size)
    if pairing.pairs.size:
        agents = inf[pairing.pairs]
        res = coordinated_kernel(sim.headings, view.offsets, view.nbrs, sim.influencer,
                                 agents, goal, cands, TIE_TOL)
        out[pairing.pairs[:, 0]] = res[:, 0]
        out[pairing.pairs[:, 1]] = res[:, 1]
    if pairing.solo.size:
        out[pairing.solo] = lookahead_kernel(sim.headings, view.offsets, view.nbrs,
                                             sim.influencer, inf[pairing.solo], goal,
                                             cands, TIE_TOL)
    return out


def latch_direction(sim, reached: np.ndarray, include_influencers: bool = True) -> float:
    """Mean heading of the connected agents (and influencers) at the latch."""
    idx = np.flatnonzero(reached | sim.influencer) if include_influencers else np.flatnonzero(reached)
    idx = idx[np.argsort(sim.ids[idx], kind="stable")]
    try:
        return circular_mean(sim.headings[idx].tolist())
    except (DegenerateMeanError, ValueError):
        return float(sim.headings[sim.influencer_idx[0]])


def multistep_controller(phase: MultistepPhase, spec: BehaviorSpec, sim, view):
    """Follow-then-influence.

    Returns the influencer headings and the (updated) phase.
    """
    inf = sim.influencer_idx
    if not phase.latched:
        s_off, s_nbrs = view.sensing()
        reached = np.zeros(sim.n, np.bool_)
        counts = connected_counts_kernel(view.offsets, view.nbrs, sim.influencer, inf,
                                         s_off, s_nbrs, reached)
        phase.last_sum = int(counts.sum())
        if phase.last_sum < phase.threshold:
            return view.rv_next[inf], phase
        phase.latched = True
        phase.latch_step = sim.t
        phase.theta_bar = latch_direction(sim, reached, spec.include_influencer_headings)
    return _traveling(spec.second_stage, spec, sim, view, phase.theta_bar, phase.pairing), phase


def multicircle_controller(phase: OrbitPhase, spec: BehaviorSpec, sim, view):
    """Circle, follow the first flock met, then circle again at the final radius."""
    inf = sim.influencer_idx
    pos = sim.positions
    o = phase.origin
    for s, a in enumerate(inf):
        if phase.stages[s] == CIRCLING_INITIAL:
            nb = view.neighbors(a)
            if nb.size and not sim.influencer[nb].all():
                phase.stages[s] = FOLLOWING
        if phase.stages[s] == FOLLOWING:
            if math.hypot(pos[a, 0] - o[0], pos[a, 1] - o[1]) >= spec.final_radius:
                phase.stages[s] = CIRCLING_FINAL
    radii = np.where(phase.stages == CIRCLING_FINAL, spec.final_radius, phase.radii)
    out = circle_kernel(pos, sim.headings, inf, o[0], o[1], radii, sim.world.speed)
    follow = phase.stages == FOLLOWING
    out[follow] = view.rv_next[inf[follow]]
    return out, phase


def polygon_controller(phase: OrbitPhase, spec: BehaviorSpec, sim, view):
    inf = sim.influencer_idx
    out = np.empty(inf.size)
    for s, a in enumerate(inf):
        if phase.radii[s] <= 0.0:
            out[s] = sim.headings[a]
            continue
        out[s], phase.targets[s] = act_polygon(int(phase.targets[s]), phase.origin, phase.radii[s],
                                               spec.polygon_sides, sim.world.speed,
                                               sim.positions[a])
    return out, phase


def act(spec: BehaviorSpec, sim, view) -> np.ndarray:
    """Headings for all influencers (in id order) at the current step."""
    phase = sim.phase
    if spec.kind in TRAVELING:
        return _traveling(spec.kind, spec, sim, view, spec.goal, phase.pairing)
    if spec.kind == MULTISTEP:
        return multistep_controller(phase, spec, sim, view)[0]
    if spec.kind == CIRCLE:
        o = phase.origin
        return circle_kernel(sim.positions, sim.headings, sim.influencer_idx, o[0], o[1],
                             phase.radii, sim.world.speed)
    if spec.kind == POLYGON:
        return polygon_controller(phase, spec, sim, view)[0]
    return multicircle_controller(phase, spec, sim, view)[0]
