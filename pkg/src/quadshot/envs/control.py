"""30 Hz motion-control environment: track randomized reference curves while
keeping the stand stable under domain randomization and perturbation bursts."""

from __future__ import annotations

import numpy as np

from .. import motion
from ..domainrand import DomainParams, sample_control_domain
from ..seeding import derive_rng
from ..simworld import STANCE_JOINTS, JOINT_LIMIT_RAD, WorldParams, nominal_base_pose
from .common import CONTROL_OBS_DIM, ControlEnvConfig, TerminationReason, control_reward
from .engine import MotionCycleEngine

ENGINE_STREAM = 10


class ControlEnv:
    """Vectorized tracking env; every array runs over ``cfg.n_envs`` instances."""

    obs_dim = CONTROL_OBS_DIM
    action_dim = 12

    def __init__(
        self,
        cfg: ControlEnvConfig,
        world_params: WorldParams | None = None,
        catalog: motion.NominalMotionCatalog | None = None,
        seed: int = 0,
    ):
        self.cfg = cfg
        self.n = cfg.n_envs
        self.world_params = world_params or WorldParams()
        self.catalog = catalog or motion.default_catalog()
        self.engine = MotionCycleEngine(
            self.n, self.world_params, self.catalog, seed, ENGINE_STREAM, ball_variant=None
        )
        self.sched_rng = derive_rng(seed, ENGINE_STREAM, 3)
        self.nominal_pose = nominal_base_pose(self.world_params)
        self.stance_nominal = np.asarray(self.world_params.stance_nominal)

        self.step_count = np.zeros(self.n, dtype=int)
        self.ep_time = np.zeros(self.n)
        self.ep_return = np.zeros(self.n)
        self.kick_at = np.full(self.n, np.inf)
        self.burst_start = np.full(self.n, np.inf)
        self.prev_action = self.engine.nominal_command()
        self._episode_stats: list[dict] = []
        self._obs = np.zeros((self.n, self.obs_dim))

    # -- episode management ---------------------------------------------------

    def _sample_domain(self, i: int) -> DomainParams:
        if self.cfg.domain_mode == "nominal":
            return DomainParams.nominal()
        return sample_control_domain(self.engine.env_rngs[i])

    def _reset_env(self, i: int) -> None:
        self.engine.reset_world_env(i, self._sample_domain(i))
        self.step_count[i] = 0
        self.ep_time[i] = 0.0
        self.ep_return[i] = 0.0
        self.kick_at[i] = np.inf
        self.prev_action[i] = self.engine.nominal_command()[i]
        if self.cfg.perturbation:
            self.burst_start[i] = self.sched_rng.uniform(*self.cfg.burst_gap_s)
        else:
            self.burst_start[i] = np.inf

    def reset(self) -> np.ndarray:
        for i in range(self.n):
            self._reset_env(i)
        self._obs = self.engine.control_observation()
        return self._obs.copy()

    def _post_transition_hooks(self, switched: np.ndarray) -> None:
        """Schedule the kick once a lifting motion starts."""
        lifting = switched & (self.engine.delta == motion.Motion.LIFTING)
        for i in np.nonzero(lifting)[0]:
            hold = self.engine.env_rngs[i].uniform(*self.cfg.kick_hold_range_s)
            self.kick_at[i] = self.engine.span[i] + hold

    # -- stepping ---------------------------------------------------------------

    def step(self, actions: np.ndarray):
        """Apply desired joint positions; returns (obs, reward, terminated,
        truncated, info) with info carrying reasons and final observations."""
        actions = np.clip(np.asarray(actions, dtype=np.float64), -JOINT_LIMIT_RAD, JOINT_LIMIT_RAD)

        wrench_active = None
        if self.cfg.perturbation:
            over = self.ep_time >= self.burst_start + self.cfg.burst_len_s
            for i in np.nonzero(over)[0]:
                self.burst_start[i] = self.ep_time[i] + self.sched_rng.uniform(*self.cfg.burst_gap_s)
            wrench_active = (self.ep_time >= self.burst_start) & (
                self.ep_time < self.burst_start + self.cfg.burst_len_s
            )

        tick_s = self.engine.next_tick_ms() / 1000.0
        result = self.engine.run_world_tick(actions, wrench_active=wrench_active)
        self.ep_time += tick_s
        self.step_count += 1

        robot = self.engine.world.robot
        toe_err = self.engine.toe_error()
        reward = control_reward(
            self.cfg.reward,
            toe_err**2,
            ((robot.q[:, STANCE_JOINTS] - self.stance_nominal) ** 2).sum(axis=1),
            (robot.qd**2).sum(axis=1),
            ((robot.base_pose - self.nominal_pose) ** 2).sum(axis=1),
            (robot.base_vel**2).sum(axis=1),
            result.torque_meansq,
            ((actions - self.prev_action) ** 2).sum(axis=1),
        )
        self.ep_return += reward
        self.prev_action = actions

        reasons = np.full(self.n, int(TerminationReason.NONE))
        terminated = robot.fallen.copy()
        reasons[terminated] = int(TerminationReason.FELL)
        deviated = ~terminated & (toe_err > self.cfg.deviation_threshold_m)
        reasons[deviated] = int(TerminationReason.EE_DEVIATION)
        terminated |= deviated
        truncated = ~terminated & (self.step_count >= self.cfg.horizon)
        reasons[truncated] = int(TerminationReason.TIMEOUT)

        self.engine.push_sensors(actions)

        # transitions for the next tick, then scheduled kicks
        self.engine.kick_commanded[:] = (self.engine.delta == motion.Motion.LIFTING) & (
            self.engine.elapsed >= self.kick_at
        )
        switched = self.engine.advance_selector()
        self._post_transition_hooks(switched)

        obs = self.engine.control_observation()
        done = terminated | truncated
        final_obs = None
        if np.any(truncated):
            final_obs = obs.copy()
        for i in np.nonzero(done)[0]:
            self._episode_stats.append(
                {
                    "env": i,
                    "return": float(self.ep_return[i]),
                    "length": int(self.step_count[i]),
                    "reason": TerminationReason(reasons[i]).name.lower(),
                    "shots": 0,
                    "hits": 0,
                }
            )
            self._reset_env(i)
        if np.any(done):
            fresh = self.engine.control_observation()
            obs[done] = fresh[done]
        self._obs = obs

        info = {"reason": reasons, "final_obs": final_obs}
        return obs.copy(), reward, terminated, truncated, info

    def drain_episode_stats(self) -> list[dict]:
        out = self._episode_stats
        self._episode_stats = []
        return out
