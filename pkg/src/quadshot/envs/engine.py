"""Batched motion-cycle engine shared by the control and planning envs.

Owns the world, the per-env motion state (indicator, curve, span, phase),
the sensor history rings, and control-observation assembly. Environments
layer rewards, termination, and episode logic on top.
"""

from __future__ import annotations

import numpy as np

from .. import bezier, motion
from ..domainrand import DomainParams, delay_to_steps
from ..seeding import derive_rng
from ..simworld import KICK_JOINTS, World, WorldParams
from .common import (
    ACTION_DIM,
    BALL_DELAY_BUFFER,
    BALL_HISTORY_LEN,
    CONTROL_HZ,
    HISTORY_LEN,
    STATE_FEEDBACK_DIM,
    HistoryRing,
    tick_length_ms,
)

SIGMA_ENCODER = 0.005
SIGMA_GYRO = 0.005
SIGMA_BALL = 0.01


class MotionCycleEngine:
    def __init__(
        self,
        n: int,
        world_params: WorldParams,
        catalog: motion.NominalMotionCatalog,
        seed: int,
        stream: int,
        ball_variant: str | None = None,
    ):
        self.n = n
        self.catalog = catalog
        self.world = World(n, world_params, ball_variant, rng=derive_rng(seed, stream, 0))
        self.sensor_rng = derive_rng(seed, stream, 1)
        self.env_rngs = [derive_rng(seed, stream, 2, i) for i in range(n)]

        self.delta = np.zeros(n, dtype=int)
        self.span = np.ones(n)
        self.elapsed = np.zeros(n)
        self.alpha = np.zeros((n, 5, 3))
        self.kick_commanded = np.zeros(n, dtype=bool)
        self.contact_armed = np.zeros(n, dtype=bool)
        self.kick_started = np.zeros(n, dtype=bool)  # entered kicking this tick
        self.chain_curves = True  # planner mode keeps its own curve across motions

        self.state_ring = HistoryRing(n, HISTORY_LEN, STATE_FEEDBACK_DIM)
        self.action_ring = HistoryRing(n, HISTORY_LEN, ACTION_DIM)
        self.ball_true_ring = HistoryRing(n, BALL_DELAY_BUFFER, 3)
        self.ball_obs_ring = HistoryRing(n, BALL_HISTORY_LEN, 3)
        self.ball_delay_steps = np.zeros(n, dtype=int)

        self.tick_counter = 0  # global, drives the 33/34 ms pattern

    # -- episode plumbing ---------------------------------------------------

    def reset_motion(self, i: int) -> None:
        """Start env ``i`` standing at the foothold with a fresh standing span."""
        spec = motion.randomize_motion(self.catalog, motion.Motion.STANDING, self.env_rngs[i])
        spec = motion.chain_continuity(spec, np.asarray(self.catalog.standing.params.points[-1]))
        self.delta[i] = int(spec.indicator)
        self.span[i] = spec.span
        self.elapsed[i] = 0.0
        self.alpha[i] = spec.params.points
        self.kick_commanded[i] = False
        self.contact_armed[i] = False
        self.state_ring.reset(i)
        self.action_ring.reset(i)
        self.ball_true_ring.reset(i)
        self.ball_obs_ring.reset(i)

    def set_ball_delay(self, i: int, delay_s: float) -> None:
        self.ball_delay_steps[i] = int(delay_to_steps(delay_s, CONTROL_HZ, BALL_DELAY_BUFFER - 1))

    # -- per-tick pipeline ---------------------------------------------------

    def next_tick_ms(self) -> int:
        return tick_length_ms(self.tick_counter)

    def run_world_tick(self, commands, wrench_active=None, goal_xy=None, reach_radius=0.2):
        """Advance physics one control tick; contact runs while a kick is armed."""
        tick_ms = self.next_tick_ms()
        contact = self.contact_armed if self.world.ball is not None else None
        result = self.world.tick(
            commands, tick_ms,
            contact_enabled=contact, goal_xy=goal_xy, wrench_active=wrench_active,
            reach_radius=reach_radius,
        )
        if self.world.ball is not None:
            self.contact_armed &= ~result.hits
        self.tick_counter += 1
        self.elapsed += tick_ms / 1000.0
        return result

    def push_sensors(self, actions: np.ndarray) -> None:
        """Record the post-tick sensor reading and the applied action."""
        dom = self.world.domain
        q_obs = (
            self.world.robot.q
            + dom.encoder_noise_mean
            + self.sensor_rng.normal(0.0, SIGMA_ENCODER, size=(self.n, 12))
        )
        rpy_obs = (
            self.world.robot.base_pose[:, 3:6]
            + dom.gyro_noise_mean
            + self.sensor_rng.normal(0.0, SIGMA_GYRO, size=(self.n, 3))
        )
        self.state_ring.push(np.concatenate([q_obs, rpy_obs], axis=1))
        self.action_ring.push(actions)
        if self.world.ball is not None:
            ball_body = self.world.ball.position.copy()
            ball_body[:, 0] -= self.world.robot.base_pose[:, 0]
            ball_body[:, 1] -= self.world.robot.base_pose[:, 1]
            self.ball_true_ring.push(ball_body)
            detected = (
                self.ball_true_ring.read_delayed(self.ball_delay_steps)
                + dom.ball_detect_noise
                + self.sensor_rng.normal(0.0, SIGMA_BALL, size=(self.n, 3))
            )
            self.ball_obs_ring.push(detected)

    def advance_selector(self) -> np.ndarray:
        """Apply due motion transitions; returns the mask of envs that switched."""
        switched = np.zeros(self.n, dtype=bool)
        due = self.elapsed >= self.span
        hold = (self.delta == motion.Motion.LIFTING) & ~self.kick_commanded
        due &= ~hold
        self.kick_started[:] = False
        for i in np.nonzero(due)[0]:
            nxt = motion.step_selector(
                motion.Motion(self.delta[i]), self.elapsed[i], self.span[i],
                bool(self.kick_commanded[i]),
            )
            if nxt == self.delta[i]:
                continue
            prev_end = self.alpha[i, 4].copy()
            spec = self.sample_next_spec(i, nxt)
            if self.chain_curves:
                spec = motion.chain_continuity(spec, prev_end)
            if self.delta[i] == motion.Motion.KICKING:
                self.contact_armed[i] = False
            self.delta[i] = int(nxt)
            self.span[i] = spec.span
            self.elapsed[i] = 0.0
            self.alpha[i] = spec.params.points
            switched[i] = True
            if nxt == motion.Motion.KICKING:
                self.contact_armed[i] = True
                self.kick_started[i] = True
                self.kick_commanded[i] = False
        return switched

    def sample_next_spec(self, i: int, nxt: motion.Motion) -> motion.MotionSpec:
        """Randomized spec for the next motion; the planning env overrides curves."""
        return motion.randomize_motion(self.catalog, nxt, self.env_rngs[i])

    def phase(self) -> np.ndarray:
        return np.clip(self.elapsed / self.span, 0.0, 1.0)

    def reference(self) -> np.ndarray:
        """Reference toe position at the current phase, base-anchored frame."""
        return bezier.evaluate_many(self.alpha, self.phase())

    def toe_error(self) -> np.ndarray:
        diff = self.world.robot.toe - self.reference()
        return np.linalg.norm(diff, axis=-1)

    def control_observation(self) -> np.ndarray:
        """Observation layout: delta, curve points, span, phase, state and
        action histories (newest first, zero padded at episode start)."""
        n = self.n
        return np.concatenate(
            [
                self.delta.reshape(n, 1).astype(float),
                self.alpha.reshape(n, 15),
                self.span.reshape(n, 1),
                self.phase().reshape(n, 1),
                self.state_ring.flat(),
                self.action_ring.flat(),
            ],
            axis=1,
        )

    def nominal_command(self) -> np.ndarray:
        from ..simworld import nominal_joint_angles

        return np.tile(nominal_joint_angles(self.world.params), (self.n, 1))

    def reset_world_env(self, i: int, domain: DomainParams) -> None:
        self.world.reset_env(i, domain)
        self.reset_motion(i)
        self.set_ball_delay(i, domain.ball_detect_delay)
