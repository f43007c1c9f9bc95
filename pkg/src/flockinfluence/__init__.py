"""Reynolds-Vicsek flocking with influencing agents.

Subpackages and modules:

``core``
    geometry, world presets, neighbor search, the synchronous update
``placement``
    initial positions of both agent kinds
``behaviors``
    influencer heading controllers
``metrics``
    flock, lone-agent, convergence and control statistics
``harness``
    configs, seeded trials, sweeps, CSV output and the CLI
"""

from .behaviors import BehaviorSpec
from .core import SimState, WorldSpec, run, step
from .placement import PlacementSpec

__version__ = "0.1.0"

__all__ = ["BehaviorSpec", "PlacementSpec", "SimState", "WorldSpec", "run", "step"]
