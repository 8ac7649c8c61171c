"""Per-episode domain randomization and the simulated sensor model.

Ranges live in ``configs/randomization.yaml`` (shipped with the package) so
they are auditable without reading code. A DomainParams is sampled once per
episode and held fixed for its whole course; the control and planning
trainers draw different blocks of the table.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field, fields

import numpy as np
import yaml

_SIGMA_ENCODER_RAD = 0.005  # fixed read noise; the table randomizes only the bias
_SIGMA_GYRO_RAD = 0.005
_SIGMA_BALL_M = 0.01


def load_randomization_table(path=None) -> dict:
    """Load the randomization table; defaults to the packaged copy."""
    if path is None:
        src = importlib.resources.files("quadshot.configs").joinpath("randomization.yaml")
        text = src.read_text()
    else:
        with open(path, "r") as fh:
            text = fh.read()
    table = yaml.safe_load(text)
    names = [row["field"] for row in table["rows"]]
    if len(names) != len(set(names)):
        raise ValueError("randomization table maps two rows to one field")
    return table


_TABLE = load_randomization_table()


def _zeros(n):
    return lambda: np.zeros(n)


@dataclass
class DomainParams:
    """One sampled realization of every randomization row, fixed per episode."""

    link_mass_scale: float = 1.0
    link_inertia_scale: float = 1.0
    base_com_offset: np.ndarray = field(default_factory=_zeros(3))
    link_com_offset: np.ndarray = field(default_factory=_zeros(3))
    joint_damping: float = 2.35
    ground_friction: float = 1.75
    encoder_noise_mean: np.ndarray = field(default_factory=_zeros(12))
    gyro_noise_mean: np.ndarray = field(default_factory=_zeros(3))
    comm_delay: float = 0.0
    perturbation_force: np.ndarray = field(default_factory=_zeros(3))
    perturbation_torque: np.ndarray = field(default_factory=_zeros(3))
    ball_stiffness_scale: float = 1.0
    ball_mass_scale: float = 1.0
    ball_inertia_radius_scale: float = 1.0
    ball_detect_noise: np.ndarray = field(default_factory=_zeros(3))
    ball_detect_delay: float = 0.0

    @classmethod
    def nominal(cls) -> "DomainParams":
        """Mid-range dynamics, zero biases, zero delays, no perturbation."""
        return cls()


FIELD_NAMES = tuple(f.name for f in fields(DomainParams))


def _sample_row(row: dict, rng: np.random.Generator):
    n = int(row["shape"])
    if n == 1:
        return float(rng.uniform(row["low"], row["high"]))
    return rng.uniform(row["low"], row["high"], size=n)


def _sample_blocks(rng: np.random.Generator, blocks: set[str], table: dict) -> DomainParams:
    params = DomainParams()
    for row in table["rows"]:
        if row["block"] in blocks:
            setattr(params, row["field"], _sample_row(row, rng))
    return params


def sample_control_domain(rng: np.random.Generator, table: dict | None = None) -> DomainParams:
    """Shared + control-only rows; ball rows stay nominal (scale 1, zero noise)."""
    return _sample_blocks(rng, {"shared", "control"}, table or _TABLE)


def sample_planning_domain(rng: np.random.Generator, table: dict | None = None) -> DomainParams:
    """Shared + planning-only rows; the perturbation wrench stays disabled."""
    return _sample_blocks(rng, {"shared", "planning"}, table or _TABLE)


def observe_robot(
    joints: np.ndarray,
    orientation: np.ndarray,
    domain_encoder_bias: np.ndarray,
    domain_gyro_bias: np.ndarray,
    rng: np.random.Generator,
    sigma_encoder: float = _SIGMA_ENCODER_RAD,
    sigma_gyro: float = _SIGMA_GYRO_RAD,
) -> tuple[np.ndarray, np.ndarray]:
    """Raw sensor readings: truth plus per-episode bias plus Gaussian read noise."""
    q_obs = joints + domain_encoder_bias + rng.normal(0.0, sigma_encoder, size=joints.shape)
    rpy_obs = (
        orientation + domain_gyro_bias + rng.normal(0.0, sigma_gyro, size=orientation.shape)
    )
    return q_obs, rpy_obs


def delay_to_steps(delay_s, step_rate_hz: float, max_steps: int):
    """Quantize a delay to the consumer's tick, clamped to the buffer depth."""
    steps = np.rint(np.asarray(delay_s) * step_rate_hz).astype(int)
    return np.clip(steps, 0, max_steps)


def observe_ball(
    ball_history: np.ndarray,
    domain_ball_bias: np.ndarray,
    delay_s,
    rng: np.random.Generator,
    source_rate_hz: float = 30.0,
    sigma: float = _SIGMA_BALL_M,
) -> np.ndarray:
    """Detected ball position: delayed truth plus bias plus Gaussian noise.

    ``ball_history`` is ordered newest-first along axis -2; a delay past the
    buffer serves the oldest entry.
    """
    hist = np.asarray(ball_history, dtype=np.float64)
    depth = hist.shape[-2]
    steps = delay_to_steps(delay_s, source_rate_hz, depth - 1)
    if hist.ndim == 2:
        delayed = hist[int(steps)]
    else:
        delayed = hist[np.arange(hist.shape[0]), np.asarray(steps).reshape(-1)]
    return delayed + domain_ball_bias + rng.normal(0.0, sigma, size=delayed.shape)


def apply_sensor_model(
    joints: np.ndarray,
    orientation: np.ndarray,
    ball_history: np.ndarray,
    domain: DomainParams,
    rng: np.random.Generator,
    source_rate_hz: float = 30.0,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Convenience wrapper producing all three observed quantities at once."""
    q_obs, rpy_obs = observe_robot(
        joints, orientation, domain.encoder_noise_mean, domain.gyro_noise_mean, rng
    )
    ball_obs = observe_ball(
        ball_history, domain.ball_detect_noise, domain.ball_detect_delay, rng, source_rate_hz
    )
    return q_obs, rpy_obs, ball_obs
