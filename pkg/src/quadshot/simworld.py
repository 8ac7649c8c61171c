"""Reduced-order physics stand-in for the robot, its actuators, and the ball.

The kicking leg (front-right, joints 0..2) gets torque-limited double
integrator dynamics driven through a low-pass filter and joint PD at 1 kHz.
Stance joints servo first-order toward their filtered commands and the base
pose relaxes toward the nominal stand, perturbed by kicking-leg reaction,
stance deviation, and any external wrench. The ball rolls on the ground
plane with friction-proportional deceleration and takes a single impulse per
kick.

All state arrays broadcast over a leading batch dimension, so one World can
step many independent instances in lockstep.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .domainrand import DomainParams
from .errors import SimulationFault

DT_S = 0.001
TORQUE_LIMIT_NM = 33.5
JOINT_LIMIT_RAD = np.pi

# Front-right leg geometry, meters (A1 catalog scale).
HIP_MOUNT = np.array([0.183, -0.047, 0.0])
HIP_LATERAL = -0.0838  # right side: thigh plane sits -y of the hip pivot
THIGH_LEN = 0.2
CALF_LEN = 0.2

KICK_JOINTS = slice(0, 3)
STANCE_JOINTS = slice(3, 12)


@dataclass(frozen=True)
class WorldParams:
    """Physics constants; defaults target a desk-scale A1-like setup."""

    kp: float = 40.0
    kd: float = 0.5
    lpf_beta: float = 0.2
    leg_inertia: float = 0.05  # kg m^2 per kicking-leg joint before domain scaling
    stance_rate: float = 15.0  # 1/s servo rate toward filtered commands
    stance_vel_limit: float = 8.0  # rad/s
    base_rate: float = 4.0  # 1/s attraction toward nominal stand pose
    base_height: float = 0.27
    react_gain: float = 0.0035  # rad per (rad/s^2) of kicking-leg acceleration
    stance_coupling: float = 0.6  # base tilt rate per rad of stance deviation
    wrench_force_gain: float = 0.010  # m/s per N
    wrench_torque_gain: float = 0.12  # rad/s per Nm
    com_tilt_gain: float = 0.8  # equilibrium tilt per m of base CoM offset
    fall_tilt: float = 0.6
    fall_height: float = 0.15
    gravity: float = 9.81
    rolling_coef: float = 0.05  # mu_roll = rolling_coef * ground friction
    ball_radius: float = 0.11
    ball_mass: float = 0.45
    toe_radius: float = 0.02
    # restitution and effective foot mass fit so nominal kicks roll 2-4 m
    restitution: float = 0.8
    foot_mass: float = 1.2
    deform_heading_sigma: float = 0.0015  # rad per ms while rolling, / stiffness scale
    deform_contact_sigma: float = np.deg2rad(3.0)  # contact normal noise, / stiffness scale
    stance_nominal: tuple = (0.0, 0.9, -1.8) * 3
    foothold: tuple = (0.18, -0.13, 0.02)


@dataclass
class RobotState:
    """Batched robot state; every array may carry a leading batch dimension."""

    q: np.ndarray  # (..., 12) joint angles, rad
    qd: np.ndarray  # (..., 12) joint velocities, rad/s
    base_pose: np.ndarray  # (..., 6) x, y, z, roll, pitch, yaw
    base_vel: np.ndarray  # (..., 6) pose rate
    toe: np.ndarray  # (..., 3) kicking toe, base-anchored ground frame
    fallen: np.ndarray  # (...,) bool, latched

    def copy(self) -> "RobotState":
        return RobotState(
            self.q.copy(), self.qd.copy(), self.base_pose.copy(),
            self.base_vel.copy(), self.toe.copy(), self.fallen.copy(),
        )


@dataclass
class BallState:
    """Ball on the ground plane; scales already folded in from the domain."""

    position: np.ndarray  # (..., 3) world frame, z = radius while rolling
    velocity: np.ndarray  # (..., 3)
    radius: np.ndarray  # (...,)
    mass: np.ndarray  # (...,)
    stiffness: np.ndarray  # (...,) stiffness scale, deformable contact/rolling use it
    variant: str = "rigid"  # rigid | deformable

    def copy(self) -> "BallState":
        return BallState(
            self.position.copy(), self.velocity.copy(), self.radius.copy(),
            self.mass.copy(), self.stiffness.copy(), self.variant,
        )


def fk_leg(q: np.ndarray) -> np.ndarray:
    """Toe position relative to the hip pivot for (abduction, hip, knee) angles."""
    q = np.asarray(q, dtype=np.float64)
    th1, th2, th3 = q[..., 0], q[..., 1], q[..., 2]
    xp = -THIGH_LEN * np.sin(th2) - CALF_LEN * np.sin(th2 + th3)
    zp = -THIGH_LEN * np.cos(th2) - CALF_LEN * np.cos(th2 + th3)
    c1, s1 = np.cos(th1), np.sin(th1)
    y = HIP_LATERAL * c1 - zp * s1
    z = HIP_LATERAL * s1 + zp * c1
    return np.stack([xp, y, z], axis=-1)


def ik_leg(pos: np.ndarray) -> np.ndarray:
    """Closed-form inverse of :func:`fk_leg` on the knee-flexed branch.

    Test oracle only; valid while the toe sits below the hip pivot plane,
    which covers every pose this leg works in.
    """
    pos = np.asarray(pos, dtype=np.float64)
    x, y, z = pos[..., 0], pos[..., 1], pos[..., 2]
    lat_sq = y * y + z * z - HIP_LATERAL * HIP_LATERAL
    if np.any(lat_sq <= 0):
        raise ValueError("toe target inside the hip pivot cylinder; unreachable")
    zp = -np.sqrt(lat_sq)
    th1 = np.arctan2(HIP_LATERAL * z - zp * y, HIP_LATERAL * y + zp * z)
    u, v = -x, -zp
    c3 = (u * u + v * v - THIGH_LEN**2 - CALF_LEN**2) / (2 * THIGH_LEN * CALF_LEN)
    c3 = np.clip(c3, -1.0, 1.0)
    th3 = -np.arccos(c3)
    th2 = np.arctan2(u, v) - np.arctan2(CALF_LEN * np.sin(th3), THIGH_LEN + CALF_LEN * np.cos(th3))
    return np.stack([th1, th2, th3], axis=-1)


def rotate_rpy(v: np.ndarray, roll, pitch, yaw) -> np.ndarray:
    """Apply the z-y-x Euler rotation to vectors ``v`` (..., 3), componentwise."""
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    y1 = y * cr - z * sr
    z1 = y * sr + z * cr
    x2 = x * cp + z1 * sp
    z2 = -x * sp + z1 * cp
    x3 = x2 * cy - y1 * sy
    y3 = x2 * sy + y1 * cy
    return np.stack([x3, y3, z2], axis=-1)


def toe_position(q_kick: np.ndarray, base_pose: np.ndarray) -> np.ndarray:
    """Kicking toe in the base-anchored ground frame (base tilt applied)."""
    r_leg = HIP_MOUNT + fk_leg(q_kick)
    tilted = rotate_rpy(r_leg, base_pose[..., 3], base_pose[..., 4], base_pose[..., 5])
    out = tilted.copy()
    out[..., 2] += base_pose[..., 2]
    return out


def low_pass_filter(state: np.ndarray, command: np.ndarray, beta: float) -> np.ndarray:
    """One step of per-joint exponential smoothing: beta*u + (1-beta)*y."""
    return state + beta * (command - state)


def pd_torque(
    q_desired: np.ndarray,
    q_measured: np.ndarray,
    qdot_measured: np.ndarray,
    kp: float,
    kd: float,
    limit: float = TORQUE_LIMIT_NM,
) -> np.ndarray:
    """Joint PD torques, saturated at the actuator limit."""
    if kp <= 0 or kd <= 0:
        raise ValueError("PD gains must be positive")
    tau = kp * (q_desired - q_measured) - kd * qdot_measured
    return np.clip(tau, -limit, limit)


def nominal_joint_angles(world: WorldParams) -> np.ndarray:
    """Stand pose: kicking leg from foothold IK, stance legs at their nominal."""
    foot_rel = np.asarray(world.foothold) - np.array([0.0, 0.0, world.base_height]) - HIP_MOUNT
    q = np.empty(12)
    q[KICK_JOINTS] = ik_leg(foot_rel)
    q[STANCE_JOINTS] = np.asarray(world.stance_nominal)
    return q


def nominal_base_pose(world: WorldParams) -> np.ndarray:
    return np.array([0.0, 0.0, world.base_height, 0.0, 0.0, 0.0])


def make_robot_state(world: WorldParams, n: int | None = None) -> RobotState:
    """Fresh stand-pose state; batched when ``n`` is given."""
    q = nominal_joint_angles(world)
    pose = nominal_base_pose(world)
    toe = toe_position(q[KICK_JOINTS], pose)
    if n is not None:
        tile = lambda a: np.tile(a, (n, 1))
        return RobotState(
            tile(q), np.zeros((n, 12)), tile(pose), np.zeros((n, 6)),
            tile(toe), np.zeros(n, dtype=bool),
        )
    return RobotState(q.copy(), np.zeros(12), pose.copy(), np.zeros(6), toe, np.zeros((), bool))


def _expand(value) -> np.ndarray:
    """Domain scalars broadcast against (..., k) joint arrays."""
    return np.asarray(value, dtype=np.float64)[..., None]


def step_robot(
    state: RobotState,
    torques: np.ndarray,
    domain,
    world: WorldParams,
    dt: float = DT_S,
    command: np.ndarray | None = None,
    wrench_force: np.ndarray | None = None,
    wrench_torque: np.ndarray | None = None,
) -> RobotState:
    """Advance the reduced-order robot one physics step.

    ``domain`` supplies per-episode dynamics (scalars or batched arrays).
    When ``command`` is omitted, stance servo targets are recovered from the
    torques by inverting the PD law.
    """
    torques = np.asarray(torques, dtype=np.float64)
    if not np.all(np.isfinite(torques)):
        raise SimulationFault("non-finite torque reached the stepper")

    q, qd = state.q, state.qd
    damping = _expand(domain.joint_damping)
    inertia = world.leg_inertia * _expand(domain.link_inertia_scale)
    # Link CoM offset perturbs the effective leg inertia slightly.
    inertia = inertia * (1.0 + np.asarray(domain.link_com_offset)[..., :1])

    tau_k = torques[..., KICK_JOINTS]
    qd_k = qd[..., KICK_JOINTS]
    qdd_k = (tau_k - damping * qd_k) / inertia
    new_qd_k = qd_k + dt * qdd_k
    new_q_k = q[..., KICK_JOINTS] + dt * new_qd_k
    clipped = np.clip(new_q_k, -JOINT_LIMIT_RAD, JOINT_LIMIT_RAD)
    new_qd_k = np.where(new_q_k == clipped, new_qd_k, 0.0)
    new_q_k = clipped

    if command is not None:
        target_s = np.asarray(command, dtype=np.float64)[..., STANCE_JOINTS]
    else:
        target_s = q[..., STANCE_JOINTS] + (
            torques[..., STANCE_JOINTS] + world.kd * qd[..., STANCE_JOINTS]
        ) / world.kp
    vel_s = np.clip(
        world.stance_rate * (target_s - q[..., STANCE_JOINTS]),
        -world.stance_vel_limit,
        world.stance_vel_limit,
    )
    new_q_s = q[..., STANCE_JOINTS] + dt * vel_s

    new_q = np.concatenate([new_q_k, new_q_s], axis=-1)
    new_qd = np.concatenate([new_qd_k, vel_s], axis=-1)

    # Base: first-order attraction toward nominal, shifted by the CoM offset,
    # disturbed by kicking-leg reaction, stance deviation, and the wrench.
    pose = state.base_pose
    com = np.asarray(domain.base_com_offset)
    equilibrium = np.zeros_like(pose)
    equilibrium[..., 2] = world.base_height
    equilibrium[..., 3] = equilibrium[..., 3] + world.com_tilt_gain * com[..., 1]
    equilibrium[..., 4] = equilibrium[..., 4] + world.com_tilt_gain * com[..., 0]

    dev_s = new_q_s - np.asarray(world.stance_nominal)
    disturbance = np.zeros_like(pose)
    disturbance[..., 3] = world.react_gain * qdd_k[..., 0] + world.stance_coupling * (
        dev_s[..., 0] + dev_s[..., 3] + dev_s[..., 6]
    ) / 3.0
    disturbance[..., 4] = -world.react_gain * (qdd_k[..., 1] + 0.5 * qdd_k[..., 2]) + (
        world.stance_coupling
        * (dev_s[..., 1] + dev_s[..., 4] + dev_s[..., 7] + dev_s[..., 2] + dev_s[..., 5] + dev_s[..., 8])
        / 6.0
    )
    if wrench_force is not None:
        disturbance[..., 0:3] += world.wrench_force_gain * np.asarray(wrench_force)
    if wrench_torque is not None:
        disturbance[..., 3:6] += world.wrench_torque_gain * np.asarray(wrench_torque)

    pose_dot = world.base_rate * (equilibrium - pose) + disturbance
    new_pose = pose + dt * pose_dot

    toe = toe_position(new_q_k, new_pose)
    fell = (
        state.fallen
        | (np.abs(new_pose[..., 3]) > world.fall_tilt)
        | (np.abs(new_pose[..., 4]) > world.fall_tilt)
        | (new_pose[..., 2] < world.fall_height)
    )
    return RobotState(new_q, new_qd, new_pose, pose_dot, toe, fell)


def make_ball_state(
    world: WorldParams,
    domain,
    position,
    variant: str = "rigid",
    n: int | None = None,
) -> BallState:
    """Ball at rest at ``position`` with domain scales applied."""
    shape = () if n is None else (n,)
    pos = np.broadcast_to(np.asarray(position, float), shape + (3,)).copy()
    radius = world.ball_radius * np.broadcast_to(
        np.asarray(domain.ball_inertia_radius_scale, float), shape
    ).copy()
    mass = world.ball_mass * np.broadcast_to(np.asarray(domain.ball_mass_scale, float), shape).copy()
    stiff = np.broadcast_to(np.asarray(domain.ball_stiffness_scale, float), shape).copy()
    pos[..., 2] = radius
    return BallState(pos, np.zeros(shape + (3,)), radius, mass, stiff, variant)


def step_ball(
    ball: BallState,
    domain,
    world: WorldParams,
    dt: float = DT_S,
    rng: np.random.Generator | None = None,
) -> BallState:
    """Roll the ball one step: friction deceleration, deformable heading wobble."""
    v = ball.velocity
    speed = np.hypot(v[..., 0], v[..., 1])
    decel = world.rolling_coef * np.asarray(domain.ground_friction) * world.gravity
    new_speed = np.maximum(speed - decel * dt, 0.0)
    scale = np.where(speed > 0.0, new_speed / np.where(speed > 0.0, speed, 1.0), 0.0)
    vx = v[..., 0] * scale
    vy = v[..., 1] * scale
    if ball.variant == "deformable" and rng is not None:
        sigma = world.deform_heading_sigma / ball.stiffness
        theta = rng.normal(0.0, 1.0, size=new_speed.shape) * sigma * (new_speed > 0.0)
        c, s = np.cos(theta), np.sin(theta)
        vx, vy = vx * c - vy * s, vx * s + vy * c
    new_v = np.stack([vx, vy, np.zeros_like(vx)], axis=-1)
    new_pos = ball.position + dt * new_v
    new_pos[..., 2] = ball.radius
    return replace(ball, position=new_pos, velocity=new_v)


def resolve_kick_contact(
    toe_pos: np.ndarray,
    toe_vel: np.ndarray,
    ball: BallState,
    domain,
    world: WorldParams,
    rng: np.random.Generator | None = None,
    active=True,
) -> tuple[BallState, np.ndarray]:
    """Apply one ground-plane impulse where the toe is closing on the ball.

    Returns the updated ball and a hit mask; callers latch the mask so each
    kicking phase lands at most one impulse.
    """
    diff = ball.position - np.asarray(toe_pos, float)
    dist = np.linalg.norm(diff, axis=-1)
    in_contact = (dist <= ball.radius + world.toe_radius) & np.asarray(active)

    nx, ny = diff[..., 0], diff[..., 1]
    norm = np.hypot(nx, ny)
    safe = np.where(norm > 1e-12, norm, 1.0)
    nx, ny = nx / safe, ny / safe
    in_contact = in_contact & (norm > 1e-12)

    restitution = np.broadcast_to(np.asarray(world.restitution, float), dist.shape)
    if ball.variant == "deformable":
        restitution = restitution / ball.stiffness
        if rng is not None:
            theta = rng.normal(0.0, 1.0, size=dist.shape) * (
                world.deform_contact_sigma / ball.stiffness
            )
            c, s = np.cos(theta), np.sin(theta)
            nx, ny = nx * c - ny * s, nx * s + ny * c

    rel = np.asarray(toe_vel, float) - ball.velocity
    closing = rel[..., 0] * nx + rel[..., 1] * ny
    m_eff = world.foot_mass * np.asarray(domain.link_mass_scale)
    gain = (1.0 + restitution) * m_eff / (m_eff + ball.mass)
    imp = gain * np.maximum(closing, 0.0)
    hit = in_contact & (closing > 0.0)

    impulse = np.where(hit, imp, 0.0)
    new_v = ball.velocity.copy()
    new_v[..., 0] += impulse * nx
    new_v[..., 1] += impulse * ny
    return replace(ball, velocity=new_v), hit


@dataclass
class DomainArrays:
    """Stacked per-env DomainParams so batched steppers can broadcast them."""

    joint_damping: np.ndarray
    link_inertia_scale: np.ndarray
    link_mass_scale: np.ndarray
    base_com_offset: np.ndarray
    link_com_offset: np.ndarray
    ground_friction: np.ndarray
    encoder_noise_mean: np.ndarray
    gyro_noise_mean: np.ndarray
    comm_delay: np.ndarray
    perturbation_force: np.ndarray
    perturbation_torque: np.ndarray
    ball_stiffness_scale: np.ndarray
    ball_mass_scale: np.ndarray
    ball_inertia_radius_scale: np.ndarray
    ball_detect_noise: np.ndarray
    ball_detect_delay: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> "DomainArrays":
        return cls(
            joint_damping=np.zeros(n), link_inertia_scale=np.ones(n),
            link_mass_scale=np.ones(n), base_com_offset=np.zeros((n, 3)),
            link_com_offset=np.zeros((n, 3)), ground_friction=np.ones(n),
            encoder_noise_mean=np.zeros((n, 12)), gyro_noise_mean=np.zeros((n, 3)),
            comm_delay=np.zeros(n), perturbation_force=np.zeros((n, 3)),
            perturbation_torque=np.zeros((n, 3)), ball_stiffness_scale=np.ones(n),
            ball_mass_scale=np.ones(n), ball_inertia_radius_scale=np.ones(n),
            ball_detect_noise=np.zeros((n, 3)), ball_detect_delay=np.zeros(n),
        )

    def set_env(self, i: int, params: DomainParams) -> None:
        for name in self.__dataclass_fields__:
            getattr(self, name)[i] = getattr(params, name)


@dataclass
class TickResult:
    torque_meansq: np.ndarray  # (n,) mean squared torque over the tick
    hits: np.ndarray  # (n,) bool, impulse landed this tick
    reached: np.ndarray  # (n,) bool, ball entered the goal disk this tick
    goal_min_dist: np.ndarray | None = None  # (n,) substep-resolution minimum
    substeps: int = 0


class World:
    """Batch of independent reduced-order worlds stepping in lockstep at 1 kHz."""

    def __init__(
        self,
        n: int,
        params: WorldParams,
        ball_variant: str | None = None,
        rng: np.random.Generator | None = None,
    ):
        self.n = n
        self.params = params
        self.robot = make_robot_state(params, n)
        self.domain = DomainArrays.zeros(n)
        self.ball_variant = ball_variant
        self.ball: BallState | None = None
        if ball_variant is not None:
            self.ball = make_ball_state(params, self.domain, np.zeros(3), ball_variant, n)
        self.rng = rng if rng is not None else np.random.default_rng(0)
        nominal_cmd = nominal_joint_angles(params)
        self.lpf_y = np.tile(nominal_cmd, (n, 1))
        self.cmd_prev = self.lpf_y.copy()
        self.cmd_cur = self.lpf_y.copy()
        self.delay_ms = np.zeros(n, dtype=int)
        self.physics_steps = 0

    def reset_env(self, i: int, domain: DomainParams) -> None:
        """Put env ``i`` back at the nominal stand under a fresh domain sample."""
        self.domain.set_env(i, domain)
        fresh = make_robot_state(self.params)
        self.robot.q[i] = fresh.q
        self.robot.qd[i] = 0.0
        self.robot.base_pose[i] = fresh.base_pose
        self.robot.base_vel[i] = 0.0
        self.robot.toe[i] = fresh.toe
        self.robot.fallen[i] = False
        self.lpf_y[i] = fresh.q
        self.cmd_prev[i] = fresh.q
        self.cmd_cur[i] = fresh.q
        self.delay_ms[i] = int(round(domain.comm_delay * 1000.0))

    def spawn_ball(self, i: int, position: np.ndarray) -> None:
        self.ball.position[i, :2] = np.asarray(position[:2])
        self.ball.radius[i] = self.params.ball_radius * self.domain.ball_inertia_radius_scale[i]
        self.ball.mass[i] = self.params.ball_mass * self.domain.ball_mass_scale[i]
        self.ball.stiffness[i] = self.domain.ball_stiffness_scale[i]
        self.ball.position[i, 2] = self.ball.radius[i]
        self.ball.velocity[i] = 0.0

    def toe_world(self) -> np.ndarray:
        out = self.robot.toe.copy()
        out[..., 0] += self.robot.base_pose[..., 0]
        out[..., 1] += self.robot.base_pose[..., 1]
        return out

    def tick(
        self,
        commands: np.ndarray,
        tick_ms: int,
        contact_enabled: np.ndarray | None = None,
        goal_xy: np.ndarray | None = None,
        wrench_active: np.ndarray | None = None,
        reach_radius: float = 0.2,
    ) -> TickResult:
        """Run one control tick of ``tick_ms`` physics substeps.

        New commands take effect after each env's communication delay. Contact
        checks run only where ``contact_enabled``; goal-disk crossings are
        latched at substep resolution when ``goal_xy`` is given.
        """
        commands = np.asarray(commands, dtype=np.float64)
        if not np.all(np.isfinite(commands)):
            raise SimulationFault("non-finite command reached the world")
        self.cmd_prev[:] = self.cmd_cur
        self.cmd_cur[:] = commands

        p = self.params
        wf = wt = None
        if wrench_active is not None and np.any(wrench_active):
            gate = wrench_active[:, None]
            wf = self.domain.perturbation_force * gate
            wt = self.domain.perturbation_torque * gate

        torque_sumsq = np.zeros(self.n)
        hits = np.zeros(self.n, dtype=bool)
        reached = np.zeros(self.n, dtype=bool)
        goal_min = np.full(self.n, np.inf) if goal_xy is not None else None
        check_contact = contact_enabled is not None and bool(np.any(contact_enabled))
        contact_live = contact_enabled.copy() if check_contact else None

        delay = self.delay_ms[:, None]
        for j in range(tick_ms):
            u = np.where(j < delay, self.cmd_prev, self.cmd_cur)
            self.lpf_y = low_pass_filter(self.lpf_y, u, p.lpf_beta)
            tau = pd_torque(self.lpf_y, self.robot.q, self.robot.qd, p.kp, p.kd)
            torque_sumsq += np.mean(tau * tau, axis=-1)
            toe_before = self.robot.toe
            self.robot = step_robot(
                self.robot, tau, self.domain, p,
                dt=DT_S, command=self.lpf_y, wrench_force=wf, wrench_torque=wt,
            )
            if self.ball is not None:
                self.ball = step_ball(self.ball, self.domain, p, DT_S, self.rng)
                if check_contact and np.any(contact_live):
                    toe_vel = (self.robot.toe - toe_before) / DT_S
                    toe_w = self.robot.toe.copy()
                    toe_w[:, 0] += self.robot.base_pose[:, 0]
                    toe_w[:, 1] += self.robot.base_pose[:, 1]
                    self.ball, hit = resolve_kick_contact(
                        toe_w, toe_vel, self.ball, self.domain, p, self.rng, contact_live
                    )
                    hits |= hit
                    contact_live &= ~hit
                if goal_xy is not None:
                    d = np.hypot(
                        self.ball.position[:, 0] - goal_xy[:, 0],
                        self.ball.position[:, 1] - goal_xy[:, 1],
                    )
                    reached |= d <= reach_radius
                    np.minimum(goal_min, d, out=goal_min)
            self.physics_steps += 1
        return TickResult(torque_sumsq / tick_ms, hits, reached, goal_min, tick_ms)
