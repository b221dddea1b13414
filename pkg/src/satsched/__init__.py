"""Satellite scheduling models (EDSSP, MSJOPP) and a Q-learning driven evolutionary solver."""

from satsched.scenario import (
    EdsspTask,
    ObsTask,
    Satellite,
    Scenario,
    ScenarioKind,
    TransitionTables,
    VisibleWindow,
    Violation,
    angle_at,
    min_angle_over,
    validate_scenario,
)
from satsched.generator import generate_scenario
from satsched.rl_ea import RlEaConfig, RunResult, run

__all__ = [
    "EdsspTask",
    "ObsTask",
    "RlEaConfig",
    "RunResult",
    "Satellite",
    "Scenario",
    "ScenarioKind",
    "TransitionTables",
    "VisibleWindow",
    "Violation",
    "angle_at",
    "generate_scenario",
    "min_angle_over",
    "run",
    "validate_scenario",
]

__version__ = "0.1.0"
