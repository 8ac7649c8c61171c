"""The two training environments: 30 Hz motion control and 1 Hz shot planning."""

from .common import (
    CONTROL_OBS_DIM,
    PLANNING_OBS_DIM,
    ControlEnvConfig,
    PlanningEnvConfig,
    TargetDomainConfig,
    TerminationReason,
    control_reward,
    planning_reward,
)
from .control import ControlEnv
from .planning import PlanningEnv

__all__ = [
    "CONTROL_OBS_DIM",
    "PLANNING_OBS_DIM",
    "ControlEnv",
    "ControlEnvConfig",
    "PlanningEnv",
    "PlanningEnvConfig",
    "TargetDomainConfig",
    "TerminationReason",
    "control_reward",
    "planning_reward",
]
