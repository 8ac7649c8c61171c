"""1 Hz shot-planning environment.

Each planner tick hands a full reference curve to an attached (frozen)
control policy, runs 30 inner control ticks, and scores the shot by ball to
goal distance. The goal-disk crossing is latched at physics resolution; a
successful shot respawns the ball beside the robot and draws a new goal.
"""

from __future__ import annotations

import numpy as np

from .. import motion
from ..bezier import BezierParams
from ..domainrand import DomainParams, sample_planning_domain
from ..errors import ConfigError
from ..seeding import derive_rng
from ..simworld import WorldParams
from .common import (
    PLAN_DIM,
    PLANNER_TICKS,
    PLANNING_OBS_DIM,
    PlanningEnvConfig,
    TerminationReason,
    planning_reward,
)
from .engine import MotionCycleEngine

ENGINE_STREAM = 20

# tanh-action box around the per-motion nominal curve: the same offsets the
# controller saw during motion randomization
_OFF_LO = np.array([[-0.1]] * 2 + [[-0.1]] * 2 + [[-0.1]]) * np.ones((5, 3))
_OFF_HI = np.array([[0.1], [0.1], [0.3], [0.3], [0.1]]) * np.ones((5, 3))


class _PlannerEngine(MotionCycleEngine):
    """Keeps the planner's curve across motion switches; only spans resample."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.chain_curves = False

    def sample_next_spec(self, i: int, nxt: motion.Motion) -> motion.MotionSpec:
        lo, hi = motion.SPAN_RANGES_S[nxt]
        span = float(self.env_rngs[i].uniform(lo, hi))
        return motion.MotionSpec(nxt, BezierParams(self.alpha[i]), span)


class PlanningEnv:
    """Vectorized planning env driving a control policy at 30x its rate."""

    obs_dim = PLANNING_OBS_DIM
    action_dim = PLAN_DIM

    def __init__(
        self,
        cfg: PlanningEnvConfig,
        control_policy,
        world_params: WorldParams | None = None,
        catalog: motion.NominalMotionCatalog | None = None,
        seed: int = 0,
    ):
        if control_policy is None:
            raise ConfigError("planning env needs an attached control policy")
        self.cfg = cfg
        self.n = cfg.n_envs
        self.control_policy = control_policy
        self.world_params = world_params or WorldParams()
        self.catalog = catalog or motion.default_catalog()
        self.engine = _PlannerEngine(
            self.n, self.world_params, self.catalog, seed, ENGINE_STREAM,
            ball_variant=cfg.variant,
        )
        self.nominal_stack = np.stack(
            [self.catalog.spec_for(motion.Motion(d)).params.points for d in range(4)]
        )

        n = self.n
        self.goal = np.zeros((n, 2))
        self.last_plan = np.zeros((n, PLAN_DIM))
        self.shot_active = np.zeros(n, dtype=bool)
        self.shot_clock = np.zeros(n)
        self.ball_kicked = np.zeros(n, dtype=bool)
        self.latched = np.zeros(n, dtype=bool)
        self.hold_ticks = np.full(n, -1, dtype=int)
        self.planner_step = np.zeros(n, dtype=int)
        self.ep_return = np.zeros(n)
        self.shots = np.zeros(n, dtype=int)
        self.hits = np.zeros(n, dtype=int)
        self.dead = np.zeros(n, dtype=bool)
        self.min_shot_distance = np.full(n, np.inf)
        self._episode_stats: list[dict] = []

    # -- domains and spawns -----------------------------------------------------

    def _sample_domain(self, i: int) -> DomainParams:
        mode = self.cfg.domain_mode
        if mode == "randomized":
            return sample_planning_domain(self.engine.env_rngs[i])
        dom = DomainParams.nominal()
        if mode == "target":
            t = self.cfg.target
            dom.ball_stiffness_scale = t.stiffness_scale
            dom.ball_detect_noise = np.asarray(t.ball_detect_bias, dtype=float)
            dom.ground_friction = t.ground_friction
        elif mode != "nominal":
            raise ConfigError(f"unknown planning domain mode {mode!r}")
        return dom

    def _spawn_ball(self, i: int) -> None:
        rng = self.engine.env_rngs[i]
        base = self.engine.world.robot.base_pose[i, :2]
        pos = base + np.array(
            [rng.uniform(*self.cfg.spawn_x_range), rng.uniform(*self.cfg.spawn_y_range)]
        )
        self.engine.world.spawn_ball(i, pos)

    def _draw_goal(self, i: int) -> None:
        rng = self.engine.env_rngs[i]
        base = self.engine.world.robot.base_pose[i, :2]
        self.goal[i] = base + np.array(
            [rng.uniform(*self.cfg.goal_x_range), rng.uniform(*self.cfg.goal_y_range)]
        )

    def _clear_shot(self, i: int) -> None:
        self.shot_active[i] = False
        self.shot_clock[i] = 0.0
        self.ball_kicked[i] = False
        self.latched[i] = False
        self.min_shot_distance[i] = np.inf

    def _reset_env(self, i: int) -> None:
        self.engine.reset_world_env(i, self._sample_domain(i))
        self._spawn_ball(i)
        self._draw_goal(i)
        self._clear_shot(i)
        self.hold_ticks[i] = -1
        self.planner_step[i] = 0
        self.ep_return[i] = 0.0
        self.shots[i] = 0
        self.hits[i] = 0
        self.dead[i] = False
        self.last_plan[i] = 0.0

    def reset(self) -> np.ndarray:
        for i in range(self.n):
            self._reset_env(i)
        return self._observation()

    # -- stepping -----------------------------------------------------------------

    def map_action(self, u: np.ndarray) -> np.ndarray:
        """Squashed planner output in [-1, 1]^15 -> curve points around the
        current motion's nominal, inside the motion-randomization envelope."""
        u = np.clip(np.asarray(u, dtype=np.float64), -1.0, 1.0)
        box = u.reshape(self.n, 5, 3)
        nominal = self.nominal_stack[self.engine.delta]
        return nominal + _OFF_LO + 0.5 * (box + 1.0) * (_OFF_HI - _OFF_LO)

    def _register_kick_starts(self) -> None:
        started = self.engine.kick_started & ~self.dead
        if np.any(started):
            self.shot_active |= started
            self.shots += started

    def _schedule_kicks(self) -> None:
        """Quantized to planner ticks: once the lift curve has completed, hold
        for a drawn number of whole ticks, then command the kick. Runs at the
        planner boundary so the indicator already reads kicking when the
        planner decides the kick-second curve."""
        lift_done = (self.engine.delta == motion.Motion.LIFTING) & (
            self.engine.elapsed >= self.engine.span
        )
        for i in np.nonzero(lift_done)[0]:
            if self.hold_ticks[i] < 0:
                lo, hi = self.cfg.kick_hold_ticks
                self.hold_ticks[i] = int(self.engine.env_rngs[i].integers(lo, hi + 1))
            else:
                self.hold_ticks[i] -= 1
            if self.hold_ticks[i] == 0:
                self.engine.kick_commanded[i] = True
                self.hold_ticks[i] = -1
        self.engine.advance_selector()
        self._register_kick_starts()

    def step(self, actions: np.ndarray):
        """One planner tick: apply the curve, run 30 control ticks, score."""
        alpha = self.map_action(actions)
        self.engine.alpha[:] = alpha
        self.last_plan = alpha.reshape(self.n, PLAN_DIM)

        goal_world = self.goal
        for _ in range(PLANNER_TICKS):
            self.engine.contact_armed &= ~self.dead
            obs_c = self.engine.control_observation()
            cmds = self.control_policy(obs_c)
            tick_s = self.engine.next_tick_ms() / 1000.0
            result = self.engine.run_world_tick(cmds, goal_xy=goal_world,
                                                reach_radius=self.cfg.reach_radius_m)
            self.latched |= result.reached & ~self.dead
            self.ball_kicked |= result.hits & ~self.dead
            self.shot_clock += tick_s * self.shot_active
            np.minimum(self.min_shot_distance, result.goal_min_dist, out=self.min_shot_distance)
            self.engine.push_sensors(cmds)
            self.dead |= self.engine.world.robot.fallen
            self.engine.advance_selector()
            self._register_kick_starts()

        ball = self.engine.world.ball
        dist = np.hypot(ball.position[:, 0] - goal_world[:, 0],
                        ball.position[:, 1] - goal_world[:, 1])
        reward = planning_reward(dist, self.latched, self.cfg.rho_g)
        self.ep_return += reward
        self.planner_step += 1
        min_dist_snapshot = self.min_shot_distance.copy()

        reasons = np.full(self.n, int(TerminationReason.NONE))
        terminated = self.dead.copy()
        reasons[terminated] = int(TerminationReason.FELL)

        speed = np.hypot(ball.velocity[:, 0], ball.velocity[:, 1])
        kick_over = self.shot_active & (self.engine.delta != motion.Motion.KICKING)
        stopped_short = (
            ~terminated
            & ~self.latched
            & kick_over
            & ((self.ball_kicked & (speed == 0.0)) | ~self.ball_kicked
               | (self.shot_clock > self.cfg.shot_timeout_s))
        )
        reasons[stopped_short] = int(TerminationReason.BALL_STOPPED_SHORT)
        terminated |= stopped_short

        if self.cfg.single_shot:
            goal_hit = ~terminated & self.latched
            reasons[goal_hit] = int(TerminationReason.GOAL_REACHED)
            terminated |= goal_hit

        truncated = ~terminated & (self.planner_step >= self.cfg.horizon_ticks)
        reasons[truncated] = int(TerminationReason.TIMEOUT)

        # successful shots in a continuing episode: respawn ball, fresh goal
        succeeded = self.latched & ~terminated & ~truncated
        for i in np.nonzero(succeeded)[0]:
            self.hits[i] += 1
            self._clear_shot(i)
            self._spawn_ball(i)
            self._draw_goal(i)

        self._schedule_kicks()
        obs = self._observation()
        done = terminated | truncated
        final_obs = obs.copy() if np.any(truncated) else None
        for i in np.nonzero(done)[0]:
            self._episode_stats.append(
                {
                    "env": i,
                    "return": float(self.ep_return[i]),
                    "length": int(self.planner_step[i]),
                    "reason": TerminationReason(reasons[i]).name.lower(),
                    "shots": int(self.shots[i]),
                    "hits": int(self.hits[i] + bool(self.latched[i])),
                }
            )
            self._reset_env(i)
        if np.any(done):
            fresh = self._observation()
            obs[done] = fresh[done]

        info = {
            "reason": reasons,
            "final_obs": final_obs,
            "distance": dist,
            "min_shot_distance": min_dist_snapshot,
        }
        return obs, reward, terminated, truncated, info

    def _observation(self) -> np.ndarray:
        base = self.engine.world.robot.base_pose[:, :2]
        return np.concatenate(
            [
                self.goal - base,
                self.engine.ball_obs_ring.flat(),
                self.last_plan,
                self.engine.state_ring.flat(),
                self.engine.delta.reshape(self.n, 1).astype(float),
            ],
            axis=1,
        )

    def drain_episode_stats(self) -> list[dict]:
        out = self._episode_stats
        self._episode_stats = []
        return out
