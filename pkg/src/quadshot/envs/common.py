"""Shared environment machinery: rates, histories, rewards, configs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

PHYSICS_HZ = 1000
CONTROL_HZ = 30
PLANNER_TICKS = 30  # control ticks per planner tick

STATE_FEEDBACK_DIM = 15  # 12 joint encoders + 3 orientation
HISTORY_LEN = 6
ACTION_DIM = 12
PLAN_DIM = 15
BALL_HISTORY_LEN = 16
BALL_DELAY_BUFFER = 10  # >= 0.3 s at 30 Hz

CONTROL_OBS_DIM = 1 + 15 + 1 + 1 + HISTORY_LEN * STATE_FEEDBACK_DIM + HISTORY_LEN * ACTION_DIM
PLANNING_OBS_DIM = 2 + BALL_HISTORY_LEN * 3 + PLAN_DIM + HISTORY_LEN * STATE_FEEDBACK_DIM + 1


class TerminationReason(IntEnum):
    NONE = 0
    FELL = 1
    EE_DEVIATION = 2
    BALL_STOPPED_SHORT = 3
    TIMEOUT = 4
    GOAL_REACHED = 5


def tick_length_ms(tick_index: int) -> int:
    """33/34 ms alternation: every third tick is 34 ms so 30 ticks make 1000 ms."""
    return 34 if tick_index % 3 == 0 else 33


class HistoryRing:
    """Fixed-depth newest-first history with zero padding after reset."""

    def __init__(self, n: int, depth: int, dim: int):
        self.data = np.zeros((n, depth, dim))

    def push(self, values: np.ndarray) -> None:
        self.data[:, 1:, :] = self.data[:, :-1, :]
        self.data[:, 0, :] = values

    def reset(self, idx) -> None:
        self.data[idx] = 0.0

    def flat(self) -> np.ndarray:
        n = self.data.shape[0]
        return self.data.reshape(n, -1)

    def read_delayed(self, steps: np.ndarray) -> np.ndarray:
        return self.data[np.arange(self.data.shape[0]), steps]


@dataclass
class RewardConfig:
    """Scales and weights of the seven-term control reward."""

    rho_e: float = 5.0
    rho_m: float = 2.0
    rho_mdot: float = 0.002
    rho_b: float = 5.0
    rho_bdot: float = 0.05
    rho_tau: float = 0.0005
    rho_da: float = 1.0
    weights: tuple = (0.5, 0.1, 0.1, 0.1, 0.1, 0.05, 0.05)

    def __post_init__(self) -> None:
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (7,) or abs(w.sum() - 1.0) > 1e-9 or np.any(w < 0):
            raise ValueError("reward weights must be 7 non-negative values summing to 1")


def control_reward(
    cfg: RewardConfig,
    toe_error_sq,
    stance_dev_sq,
    joint_vel_sq,
    base_dev_sq,
    base_vel_sq,
    torque_meansq,
    action_delta_sq,
):
    """Weighted sum of exponential terms; lands in [0, 1] by construction."""
    terms = (
        np.exp(-cfg.rho_e * toe_error_sq),
        np.exp(-cfg.rho_m * stance_dev_sq),
        np.exp(-cfg.rho_mdot * joint_vel_sq),
        np.exp(-cfg.rho_b * base_dev_sq),
        np.exp(-cfg.rho_bdot * base_vel_sq),
        np.exp(-cfg.rho_tau * torque_meansq),
        np.exp(-cfg.rho_da * action_delta_sq),
    )
    w = cfg.weights
    out = w[0] * terms[0]
    for wi, term in zip(w[1:], terms[1:]):
        out = out + wi * term
    return out


def planning_reward(distance, reached, rho_g: float = 1.0):
    """1 inside the goal disk (latched upstream), exponential falloff outside."""
    return np.where(reached, 1.0, np.exp(-rho_g * np.asarray(distance)))


@dataclass
class ControlEnvConfig:
    n_envs: int = 8
    horizon: int = 2500
    deviation_threshold_m: float = 0.3
    kick_hold_range_s: tuple = (0.5, 2.0)
    perturbation: bool = True
    burst_gap_s: tuple = (1.0, 3.0)
    burst_len_s: float = 0.2
    domain_mode: str = "randomized"  # randomized | nominal
    reward: RewardConfig = field(default_factory=RewardConfig)


@dataclass
class TargetDomainConfig:
    """The fixed stand-in for the real deployment world: one soft ball, one
    floor, one (slightly miscalibrated) ball detector."""

    stiffness_scale: float = 1.4
    ball_detect_bias: tuple = (0.02, -0.02, 0.0)
    ground_friction: float = 1.75


@dataclass
class PlanningEnvConfig:
    n_envs: int = 8
    horizon_ticks: int = 80
    rho_g: float = 1.0
    reach_radius_m: float = 0.2
    shot_timeout_s: float = 8.0
    goal_x_range: tuple = (0.5, 5.0)
    goal_y_range: tuple = (-1.0, 1.0)
    spawn_x_range: tuple = (0.30, 0.48)
    spawn_y_range: tuple = (-0.22, -0.04)
    kick_hold_ticks: tuple = (1, 2)
    variant: str = "rigid"  # rigid | deformable
    domain_mode: str = "randomized"  # randomized | nominal | target
    single_shot: bool = False
    target: TargetDomainConfig = field(default_factory=TargetDomainConfig)
