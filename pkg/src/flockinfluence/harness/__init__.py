"""Experiment configuration, seeded trials, sweeps and CSV output."""

from .config import (ConfigError, ExperimentConfig, MalformedValueError, SettingMismatchError,
                     UnknownKeyError, from_mapping, load_config, parse_config)
from .runner import (SweepResult, SweepSummary, TrialResult, convergence_times, run_sweep,
                     run_trial, summarize, trial_seed)

__all__ = ["ConfigError", "ExperimentConfig", "MalformedValueError", "SettingMismatchError",
           "UnknownKeyError", "from_mapping", "load_config", "parse_config", "SweepResult", "SweepSummary",
           "TrialResult", "convergence_times", "run_sweep", "run_trial", "summarize", "trial_seed"]
