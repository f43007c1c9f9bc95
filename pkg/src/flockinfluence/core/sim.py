"""Agent state and the synchronous Reynolds-Vicsek update."""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from numba import njit

from .geometry import (angle_diff, angle_diff_nb, normalize_angle, normalize_angle_nb,
                       wrap_coord, wrap_coord_nb)
from .spatial import build_index
from .world import WorldSpec

RV = "rv"
INFLUENCER = "influencer"


@dataclass
class AgentState:
    """Snapshot of a single agent, as exposed by :attr:`SimState.agents`."""

    id: int
    position: np.ndarray
    heading: float
    kind: str = RV
    phase: Any = None


def rv_next_heading(theta: float, neighbor_headings: Sequence[float]) -> float:
    """One Reynolds-Vicsek heading update with momentum factor 1/2.

    Differences to neighbors are wrapped into ``(-pi, pi]`` before they are
    averaged; an agent with no neighbors keeps its heading.
    """
    n = len(neighbor_headings)
    if n == 0:
        return normalize_angle(theta)
    acc = 0.0
    for h in neighbor_headings:
        acc += angle_diff(h, theta)
    return normalize_angle(theta + 0.5 * acc / n)


def advance_position(position, heading: float, world: WorldSpec) -> np.ndarray:
    x = position[0] + world.speed * math.cos(heading)
    y = position[1] + world.speed * math.sin(heading)
    if world.toroidal:
        x = wrap_coord(x, world.width)
        y = wrap_coord(y, world.height)
    return np.array([x, y])


@njit(cache=True)
def rv_headings_kernel(headings, offsets, nbrs):
    """Apply :func:`rv_next_heading` to every agent from CSR neighbor lists."""
    n = headings.shape[0]
    out = np.empty(n)
    for i in range(n):
        th = headings[i]
        a = offsets[i]
        b = offsets[i + 1]
        if a == b:
            out[i] = normalize_angle_nb(th)
            continue
        acc = 0.0
        for k in range(a, b):
            acc += angle_diff_nb(headings[nbrs[k]], th)
        out[i] = normalize_angle_nb(th + 0.5 * acc / (b - a))
    return out


@njit(cache=True)
def advance_kernel(pos, headings, speed, toroidal, width, height):
    for i in range(pos.shape[0]):
        x = pos[i, 0] + speed * math.cos(headings[i])
        y = pos[i, 1] + speed * math.sin(headings[i])
        if toroidal:
            x = wrap_coord_nb(x, width)
            y = wrap_coord_nb(y, height)
        pos[i, 0] = x
        pos[i, 1] = y


@dataclass
class SimState:
    """Complete state of one run.

    Agents are stored column-wise; ``ids`` carries each agent's identifier
    so that results do not depend on storage order. ``phase`` holds the
    influencer controller's private state and is created by the behavior
    on first use.
    """

    world: WorldSpec
    positions: np.ndarray
    headings: np.ndarray
    influencer: np.ndarray
    ids: np.ndarray = None
    t: int = 0
    rng: np.random.Generator | None = None
    phase: Any = None
    neighbor_search: str = "grid"

    def __post_init__(self):
        self.positions = np.array(self.positions, dtype=np.float64).reshape(-1, 2)
        self.headings = np.array(self.headings, dtype=np.float64).reshape(-1)
        n = self.positions.shape[0]
        if self.influencer is None:
            self.influencer = np.zeros(n, dtype=bool)
        self.influencer = np.array(self.influencer, dtype=bool).reshape(-1)
        if self.ids is None:
            self.ids = np.arange(n, dtype=np.int64)
        self.ids = np.array(self.ids, dtype=np.int64).reshape(-1)
        if not (self.headings.shape[0] == self.influencer.shape[0] == self.ids.shape[0] == n):
            raise ValueError("agent arrays have inconsistent lengths")

    @property
    def n(self) -> int:
        return self.positions.shape[0]

    @property
    def influencer_idx(self) -> np.ndarray:
        """Storage indices of influencers, ordered by id."""
        idx = np.flatnonzero(self.influencer)
        return idx[np.argsort(self.ids[idx], kind="stable")]

    @property
    def rv_idx(self) -> np.ndarray:
        idx = np.flatnonzero(~self.influencer)
        return idx[np.argsort(self.ids[idx], kind="stable")]

    @property
    def agents(self) -> list[AgentState]:
        phases = {}
        if self.phase is not None and hasattr(self.phase, "agent_phase"):
            for slot, i in enumerate(self.influencer_idx):
                phases[int(i)] = self.phase.agent_phase(slot)
        return [
            AgentState(int(self.ids[i]), self.positions[i].copy(), float(self.headings[i]),
                       INFLUENCER if self.influencer[i] else RV, phases.get(i))
            for i in range(self.n)
        ]

    def index(self, positions=None):
        return build_index(self.positions if positions is None else positions,
                           self.world, self.neighbor_search, self.ids)

    def copy(self) -> "SimState":
        return SimState(self.world, self.positions.copy(), self.headings.copy(),
                        self.influencer.copy(), self.ids.copy(), self.t, copy.deepcopy(self.rng),
                        copy.deepcopy(self.phase), self.neighbor_search)


class StepView:
    """Read-only time-``t`` data handed to influencer controllers."""

    def __init__(self, sim: SimState, index, offsets, nbrs, rv_next):
        self.sim = sim
        self.index = index
        self.offsets = offsets
        self.nbrs = nbrs
        self.rv_next = rv_next
        self._sensing = None

    def neighbors(self, i: int) -> np.ndarray:
        return self.nbrs[self.offsets[i]:self.offsets[i + 1]]

    def sensing(self):
        """CSR lists at the sensing radius, one row per influencer slot."""
        if self._sensing is None:
            self._sensing = self.index.neighbor_lists(
                self.sim.world.sensing_radius, self.sim.influencer_idx)
        return self._sensing


def advance_inplace(sim: SimState, behavior=None) -> SimState:
    """Advance ``sim`` by one synchronous step, mutating it."""
    index = sim.index()
    offsets, nbrs = index.neighbor_lists(sim.world.radius)
    new_h = rv_headings_kernel(sim.headings, offsets, nbrs)
    inf = sim.influencer_idx
    if behavior is not None and inf.size:
        if sim.phase is None:
            sim.phase = behavior.init_phase(sim)
        view = StepView(sim, index, offsets, nbrs, new_h)
        new_h[inf] = behavior.act(sim, view)
    w = sim.world
    advance_kernel(sim.positions, new_h, w.speed, w.toroidal, float(w.width), float(w.height))
    sim.headings = new_h
    sim.t += 1
    return sim


def step(sim: SimState, behavior=None) -> SimState:
    """Return the state one step later; ``sim`` is left untouched.

    Every agent's next heading is computed from the time-``t`` snapshot
    (alignment rule for Reynolds-Vicsek agents and following influencers,
    controller output otherwise) before anyone moves.
    """
    return advance_inplace(sim.copy(), behavior)


def run(sim: SimState, behavior=None, steps: int = 1) -> SimState:
    """Advance ``sim`` in place by ``steps`` steps."""
    for _ in range(steps):
        advance_inplace(sim, behavior)
    return sim
