"""Geometry, world presets, neighbor search and the synchronous update."""

from .geometry import (TWO_PI, DegenerateMeanError, angle_diff, circular_mean, distance,
                       min_image, normalize_angle, torus_delta, wrap_position)
from .sim import INFLUENCER, RV, AgentState, SimState, advance_inplace, rv_next_heading, run, step
from .spatial import BruteForceIndex, SpatialIndex, build_index, radius_query
from .world import WorldSpec

__all__ = ["TWO_PI", "DegenerateMeanError", "angle_diff", "circular_mean", "distance",
           "min_image", "normalize_angle", "torus_delta", "wrap_position", "INFLUENCER", "RV",
           "AgentState", "SimState", "advance_inplace", "rv_next_heading", "run", "step",
           "BruteForceIndex", "SpatialIndex", "build_index", "radius_query", "WorldSpec"]
