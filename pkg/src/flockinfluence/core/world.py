"""World geometry presets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOROIDAL = "toroidal"
OPEN = "open"

DEFAULT_SPEED = 0.7


@dataclass(frozen=True)
class WorldSpec:
    """Rectangular simulation space.

    Parameters
    ----------
    width, height : float
        Extent of the grid. For open worlds this is only used for reporting
        which agents have wandered off-world.
    topology : {"toroidal", "open"}
    radius : float
        Neighborhood radius ``r`` of the alignment rule.
    speed : float
        Distance travelled per step by every agent.
    """

    width: float
    height: float
    topology: str = TOROIDAL
    radius: float = 10.0
    speed: float = DEFAULT_SPEED

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError("world dimensions must be positive")
        if self.radius <= 0 or self.speed <= 0:
            raise ValueError("radius and speed must be positive")
        if self.topology not in (TOROIDAL, OPEN):
            raise ValueError(f"unknown topology {self.topology!r}")

    @property
    def toroidal(self) -> bool:
        return self.topology == TOROIDAL

    @property
    def sensing_radius(self) -> float:
        return 2.0 * self.radius

    @property
    def center(self) -> np.ndarray:
        return np.array([self.width / 2.0, self.height / 2.0])

    @classmethod
    def small(cls) -> "WorldSpec":
        return cls(150.0, 150.0, TOROIDAL, radius=20.0)

    @classmethod
    def large(cls) -> "WorldSpec":
        return cls(1000.0, 1000.0, TOROIDAL, radius=10.0)

    @classmethod
    def herd(cls) -> "WorldSpec":
        return cls(5000.0, 5000.0, OPEN, radius=10.0)

    @classmethod
    def preset(cls, setting: str) -> "WorldSpec":
        try:
            return {"small": cls.small, "large": cls.large, "herd": cls.herd}[setting]()
        except KeyError:
            raise ValueError(f"unknown setting {setting!r}") from None


# radius of the disc holding the herd at t=0
HERD_START_RADIUS = 500.0
