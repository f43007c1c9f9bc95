"""Experiment configuration: schema, defaults and validation.

A config is a flat YAML mapping in which every key is optional::

    setting: large          # small | large | herd
    rv_count: 300
    inf_count: 50
    placement: null         # grid (kmeans in herd); random | grid | kmeans | circle-random | circle-grid | circle-border
    placement_radius: 500
    behavior: multistep:face
    goal_theta: 0.0
    threshold_frac: 0.5
    final_radius: 900       # default 1100 when placement_radius is 750
    polygon_sides: 10
    candidates: null        # 64 for lookahead, 16 for coordinated
    steps: null             # see default_steps()
    sample_interval: 100
    trials: 100
    seed: 0
    epsilon_align: 0.1
    threads: 1
    early_exit: null        # default: on for large runs with influencers
    proximity_only_flocks: false
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields

import yaml

from ..behaviors import (MULTISTEP, STATIONARY, BehaviorSpec, UnknownBehaviorError,
                         canonical_kind)
from ..core.world import WorldSpec
from ..placement import (CIRCULAR, GRID, KMEANS, RANDOM, PlacementSpec, UnknownStrategyError,
                         canonical_strategy)

SETTINGS = ("small", "large", "herd")

# default horizons
LARGE_INFLUENCE_CAP = 30_000
HERD_INFLUENCE_STEPS = 15_000
BASELINE_STEPS = 6_000


class ConfigError(ValueError):
    """Base class for configuration problems."""


class UnknownKeyError(ConfigError):
    pass


class SettingMismatchError(ConfigError):
    """A behavior or placement is not meaningful in the chosen setting."""


class MalformedValueError(ConfigError):
    pass


# re-exported so callers can catch every config failure from one module
__all__ = ["ExperimentConfig", "parse_config", "ConfigError", "UnknownKeyError",
           "SettingMismatchError", "MalformedValueError", "UnknownStrategyError",
           "UnknownBehaviorError", "default_steps"]


def default_steps(setting: str, inf_count: int) -> int:
    if inf_count > 0 and setting == "large":
        return LARGE_INFLUENCE_CAP
    if inf_count > 0 and setting == "herd":
        return HERD_INFLUENCE_STEPS
    return BASELINE_STEPS


@dataclass(frozen=True)
class ExperimentConfig:
    """One cell of an experiment grid.

    ``steps``, ``final_radius`` and ``early_exit`` are resolved from the
    other fields when left as ``None``; :meth:`resolved` returns the
    concrete values.
    """

    setting: str = "large"
    rv_count: int = 300
    inf_count: int = 50
    placement: str | None = None
    placement_radius: float = 500.0
    behavior: str = "face"
    goal_theta: float = 0.0
    threshold_frac: float = 0.5
    final_radius: float | None = None
    polygon_sides: int = 10
    candidates: int | None = None
    steps: int | None = None
    sample_interval: int = 100
    trials: int = 100
    seed: int = 0
    epsilon_align: float = 0.1
    threads: int = 1
    early_exit: bool | None = None
    proximity_only_flocks: bool = False

    def __post_init__(self):
        validate(self)

    @property
    def world(self) -> WorldSpec:
        return WorldSpec.preset(self.setting)

    @property
    def max_steps(self) -> int:
        return self.steps if self.steps is not None else default_steps(self.setting, self.inf_count)

    @property
    def final_radius_value(self) -> float:
        if self.final_radius is not None:
            return self.final_radius
        return 1100.0 if self.placement_radius == 750.0 else 900.0

    @property
    def early_exit_enabled(self) -> bool:
        if self.early_exit is not None:
            return self.early_exit
        return self.setting == "large" and self.inf_count > 0

    def behavior_spec(self) -> BehaviorSpec:
        return BehaviorSpec.from_name(
            self.behavior, goal=self.goal_theta, threshold_frac=self.threshold_frac,
            candidates=self.candidates, polygon_sides=self.polygon_sides,
            final_radius=self.final_radius_value)

    def placement_spec(self) -> PlacementSpec:
        return PlacementSpec(self.placement, self.inf_count, self.placement_radius)

    def resolved(self) -> "ExperimentConfig":
        return dataclasses.replace(self, steps=self.max_steps, final_radius=self.final_radius_value,
                                   early_exit=self.early_exit_enabled)

    def replace(self, **changes) -> "ExperimentConfig":
        return from_mapping({**self.as_dict(), **changes})

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


_KEYS = {f.name: f for f in fields(ExperimentConfig)}
_INT = {"rv_count", "inf_count", "polygon_sides", "candidates", "steps", "sample_interval",
        "trials", "seed", "threads"}
_FLOAT = {"placement_radius", "goal_theta", "threshold_frac", "final_radius", "epsilon_align"}
_BOOL = {"early_exit", "proximity_only_flocks"}
_ALIASES = {"n_rv": "rv_count", "n_inf": "inf_count", "max_steps": "steps",
            "base_seed": "seed", "theta_star": "goal_theta"}


def _coerce(key, value):
    if value is None:
        if key in {"placement", "candidates", "steps", "final_radius", "early_exit"}:
            return None
        raise MalformedValueError(f"{key} may not be null")
    try:
        if key in _INT:
            if isinstance(value, bool):
                raise TypeError
            if isinstance(value, float):
                if not value.is_integer():
                    raise ValueError
                return int(value)
            return int(str(value).replace("_", ""), 0) if isinstance(value, str) else int(value)
        if key in _FLOAT:
            if isinstance(value, bool):
                raise TypeError
            v = _parse_angle(value) if isinstance(value, str) else float(value)
            if not math.isfinite(v):
                raise ValueError
            return v
        if key in _BOOL:
            if isinstance(value, bool):
                return value
            s = str(value).strip().lower()
            if s in ("true", "yes", "on", "1"):
                return True
            if s in ("false", "no", "off", "0"):
                return False
            raise ValueError
    except (TypeError, ValueError):
        raise MalformedValueError(f"{key}: cannot interpret {value!r}") from None
    return str(value)


def _parse_angle(s: str) -> float:
    """Floats, with ``pi`` allowed as a factor (``pi/4``, ``1.5*pi``)."""
    t = s.strip().lower().replace("π", "pi").replace(" ", "")
    if "pi" not in t:
        return float(t)
    num, _, den = t.partition("/")
    a, _, b = num.partition("pi")
    a = a.rstrip("*")
    b = b.lstrip("*")
    factor = {"": 1.0, "+": 1.0, "-": -1.0}.get(a)
    if factor is None:
        factor = float(a)
    if b:
        factor *= float(b)
    return factor * math.pi / (float(den) if den else 1.0)


def from_mapping(data: dict) -> ExperimentConfig:
    """Validate a mapping and fill in defaults."""
    if not isinstance(data, dict):
        raise MalformedValueError("config must be a mapping")
    kwargs = {}
    for raw, value in data.items():
        key = _ALIASES.get(str(raw).replace("-", "_"), str(raw).replace("-", "_"))
        if key not in _KEYS:
            raise UnknownKeyError(f"unknown config key {raw!r}")
        kwargs[key] = _coerce(key, value)
    return ExperimentConfig(**kwargs)


def parse_config(text: str) -> ExperimentConfig:
    """Parse YAML text into a validated :class:`ExperimentConfig`."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise MalformedValueError(f"not valid YAML: {exc}") from None
    return from_mapping(data or {})


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def validate(cfg: ExperimentConfig) -> None:
    if cfg.setting not in SETTINGS:
        raise MalformedValueError(f"unknown setting {cfg.setting!r}")
    if cfg.placement is None:
        object.__setattr__(cfg, "placement", KMEANS if cfg.setting == "herd" else GRID)
    strategy = canonical_strategy(cfg.placement)
    kind = canonical_kind(cfg.behavior.partition(":")[0])
    object.__setattr__(cfg, "placement", strategy)
    # surfaces unknown second stages and bad behavior parameters
    try:
        spec = cfg.behavior_spec()
    except UnknownBehaviorError:
        raise
    except ValueError as exc:
        raise MalformedValueError(str(exc)) from None
    object.__setattr__(cfg, "behavior", spec.name)

    if cfg.rv_count < 1:
        raise MalformedValueError("rv_count must be >= 1")
    if cfg.inf_count < 0:
        raise MalformedValueError("inf_count must be >= 0")
    if cfg.sample_interval < 1:
        raise MalformedValueError("sample_interval must be >= 1")
    if cfg.trials < 1:
        raise MalformedValueError("trials must be >= 1")
    if cfg.threads < 1:
        raise MalformedValueError("threads must be >= 1")
    if not 0.0 < cfg.epsilon_align < math.pi:
        raise MalformedValueError("epsilon_align must lie in (0, pi)")
    if not 0.0 < cfg.threshold_frac <= 1.0:
        raise MalformedValueError("threshold_frac must lie in (0, 1]")
    if cfg.placement_radius <= 0:
        raise MalformedValueError("placement_radius must be positive")
    if not 0 <= cfg.seed < 2**64:
        raise MalformedValueError("seed must be a 64-bit unsigned integer")
    steps = cfg.max_steps
    if steps < 0 or steps % cfg.sample_interval:
        raise MalformedValueError(
            f"steps ({steps}) must be a non-negative multiple of sample_interval")

    herd = cfg.setting == "herd"
    if kind == MULTISTEP and herd and cfg.inf_count:
        raise SettingMismatchError("multistep never latches in the open herd world")
    if kind in STATIONARY and not herd and cfg.inf_count:
        raise SettingMismatchError(f"{kind} is a stationary behavior; it needs setting herd")
    if cfg.inf_count == 0:
        return
    if strategy in CIRCULAR and not herd:
        raise SettingMismatchError(f"{strategy} placement needs setting herd")
    if strategy in (RANDOM, GRID) and herd:
        raise SettingMismatchError(f"{strategy} placement is not defined for the herd setting")
