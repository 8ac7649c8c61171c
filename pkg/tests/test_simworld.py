import numpy as np
import pytest

from quadshot import simworld as sw
from quadshot.domainrand import DomainParams, sample_control_domain
from quadshot.errors import SimulationFault
from quadshot.seeding import derive_rng

WORLD = sw.WorldParams()


def nominal_domain(**overrides):
    dom = DomainParams.nominal()
    for k, v in overrides.items():
        setattr(dom, k, v)
    return dom


class TestLowPassFilter:
    def test_bypass_at_beta_one(self):
        y = np.zeros(12)
        u = np.linspace(-1, 1, 12)
        assert np.array_equal(sw.low_pass_filter(y, u, 1.0), u)

    def test_dc_gain_one(self):
        y = np.zeros(12)
        u = np.full(12, 0.7)
        beta = 0.2
        for _ in range(100):  # plenty of time constants at beta=0.2
            y = sw.low_pass_filter(y, u, beta)
        assert np.abs(y - u).max() <= 1e-6

    def test_unit_step_closed_form(self):
        y = np.zeros(1)
        for _ in range(10):
            y = sw.low_pass_filter(y, np.ones(1), 0.1)
        assert abs(y[0] - (1 - 0.9**10)) <= 1e-12


class TestPdTorque:
    def test_zero_error_zero_torque(self):
        q = np.linspace(-1, 1, 12)
        tau = sw.pd_torque(q, q, np.zeros(12), 40.0, 0.5)
        assert np.all(tau == 0.0)

    def test_hand_example(self):
        tau = sw.pd_torque(np.array([0.1]), np.array([0.0]), np.array([1.0]), 40.0, 0.5)
        assert abs(tau[0] - 3.5) <= 1e-12

    def test_saturation(self):
        tau = sw.pd_torque(np.array([10.0]), np.array([0.0]), np.array([0.0]), 40.0, 0.5)
        assert tau[0] == 33.5

    def test_gains_must_be_positive(self):
        with pytest.raises(ValueError):
            sw.pd_torque(np.zeros(1), np.zeros(1), np.zeros(1), 0.0, 0.5)


class TestLegKinematics:
    def test_roundtrip_many(self):
        rng = derive_rng(0, 0)
        n = 10_000
        th = np.stack(
            [rng.uniform(-0.7, 0.7, n), rng.uniform(-0.3, 1.6, n), rng.uniform(-2.2, -0.6, n)],
            axis=-1,
        )
        # sampled box keeps the planar leg extension below the hip plane,
        # the branch ik_leg inverts
        zp = -sw.THIGH_LEN * np.cos(th[:, 1]) - sw.CALF_LEN * np.cos(th[:, 1] + th[:, 2])
        assert np.all(zp < 0)
        pos = sw.fk_leg(th)
        rec = sw.ik_leg(pos)
        assert np.abs(rec - th).max() <= 1e-8

    def test_nominal_stand_hits_foothold(self):
        q = sw.nominal_joint_angles(WORLD)
        toe = sw.toe_position(q[sw.KICK_JOINTS], sw.nominal_base_pose(WORLD))
        assert np.abs(toe - np.asarray(WORLD.foothold)).max() <= 1e-9


class TestStepRobot:
    def test_equilibrium_fixed_point(self):
        state = sw.make_robot_state(WORLD)
        tau = np.zeros(12)
        nxt = sw.step_robot(state, tau, nominal_domain(), WORLD)
        assert np.abs(nxt.q - state.q).max() <= 1e-12
        assert np.abs(nxt.base_pose - state.base_pose).max() <= 1e-12
        assert not nxt.fallen

    def test_double_integrator_analytic(self):
        state = sw.make_robot_state(WORLD)
        dom = nominal_domain(joint_damping=0.0)
        tau = np.zeros(12)
        tau[1] = 2.0
        inertia = WORLD.leg_inertia
        for k in range(100):
            state = sw.step_robot(state, tau, dom, WORLD, command=state.q)
            expect = (k + 1) * sw.DT_S * tau[1] / inertia
            assert abs(state.qd[1] - expect) <= 1e-6

    def test_non_finite_torque_faults(self):
        state = sw.make_robot_state(WORLD)
        tau = np.zeros(12)
        tau[0] = np.nan
        with pytest.raises(SimulationFault):
            sw.step_robot(state, tau, nominal_domain(), WORLD)

    def test_fall_latch_is_monotone(self):
        state = sw.make_robot_state(WORLD)
        state.base_pose[3] = 0.7  # beyond the tilt threshold
        nxt = sw.step_robot(state, np.zeros(12), nominal_domain(), WORLD)
        assert nxt.fallen
        for _ in range(200):
            nxt = sw.step_robot(nxt, np.zeros(12), nominal_domain(), WORLD)
            assert nxt.fallen

    def test_max_wrench_does_not_fell_nominal_stand(self):
        state = sw.make_robot_state(WORLD)
        dom = nominal_domain()
        force = np.full(3, 20.0)
        torque = np.full(3, 5.0)
        cmd = state.q.copy()
        for _ in range(500):  # 0.5 s at table-max wrench
            tau = sw.pd_torque(cmd, state.q, state.qd, WORLD.kp, WORLD.kd)
            state = sw.step_robot(
                state, tau, dom, WORLD, command=cmd, wrench_force=force, wrench_torque=torque
            )
        assert not state.fallen


class TestBall:
    def test_stopping_distance(self):
        dom = nominal_domain(ground_friction=0.8)  # mu_roll = 0.04
        ball = sw.make_ball_state(WORLD, dom, [0.0, 0.0, 0.0])
        ball.velocity[...] = [2.0, 0.0, 0.0]
        start = ball.position.copy()
        while np.hypot(ball.velocity[0], ball.velocity[1]) > 0:
            ball = sw.step_ball(ball, dom, WORLD)
        dist = np.linalg.norm((ball.position - start)[:2])
        expect = 2.0**2 / (2 * 0.04 * WORLD.gravity)
        assert abs(dist - expect) / expect <= 0.01

    def test_rest_stays_at_rest(self):
        dom = nominal_domain()
        ball = sw.make_ball_state(WORLD, dom, [1.0, 0.5, 0.0])
        nxt = sw.step_ball(ball, dom, WORLD)
        assert np.array_equal(nxt.position, ball.position)
        assert np.all(nxt.velocity == 0.0)

    def test_rigid_rolls_straight(self):
        dom = nominal_domain()
        ball = sw.make_ball_state(WORLD, dom, [0.0, 0.0, 0.0])
        ball.velocity[...] = [1.0, 1.0, 0.0]
        lateral = np.array([-1.0, 1.0]) / np.sqrt(2)
        for _ in range(3000):
            ball = sw.step_ball(ball, dom, WORLD)
            assert abs(ball.position[:2] @ lateral) <= 1e-9

    def test_energy_non_increasing(self):
        rng = derive_rng(1, 0)
        for _ in range(50):
            dom = sample_control_domain(rng)
            ball = sw.make_ball_state(WORLD, dom, rng.uniform(-1, 1, 3))
            ball.velocity[...] = [rng.uniform(-3, 3), rng.uniform(-3, 3), 0.0]
            ke = 0.5 * ball.mass * (ball.velocity**2).sum()
            for _ in range(200):
                ball = sw.step_ball(ball, dom, WORLD, rng=rng)
                ke_next = 0.5 * ball.mass * (ball.velocity**2).sum()
                assert ke_next <= ke + 1e-12
                ke = ke_next


class TestKickContact:
    def _ball_at(self, pos, mass=None, variant="rigid"):
        dom = nominal_domain()
        ball = sw.make_ball_state(WORLD, dom, pos, variant)
        if mass is not None:
            ball.mass = np.asarray(float(mass))
        return ball, dom

    def test_head_on_hand_example(self):
        world = sw.WorldParams(restitution=0.5, foot_mass=0.45)
        ball, dom = self._ball_at([0.1, 0.0, 0.0], mass=0.45)
        toe = np.array([0.1 - ball.radius - world.toe_radius + 1e-4, 0.0, ball.position[2]])
        out, hit = sw.resolve_kick_contact(toe, np.array([4.0, 0.0, 0.0]), ball, dom, world)
        assert bool(hit)
        assert abs(out.velocity[0] - 3.0) <= 1e-9
        assert abs(out.velocity[1]) <= 1e-9

    def test_separating_contact_is_noop(self):
        ball, dom = self._ball_at([0.1, 0.0, 0.0])
        ball.velocity[...] = [1.0, 0.0, 0.0]
        toe = np.array([0.1 - ball.radius - 0.01, 0.0, ball.position[2]])
        out, hit = sw.resolve_kick_contact(toe, np.array([0.5, 0.0, 0.0]), ball, dom, WORLD)
        assert not bool(hit)
        assert np.array_equal(out.velocity, ball.velocity)

    def test_no_contact_outside_radius(self):
        ball, dom = self._ball_at([1.0, 0.0, 0.0])
        toe = np.array([0.0, 0.0, 0.1])
        out, hit = sw.resolve_kick_contact(toe, np.array([4.0, 0.0, 0.0]), ball, dom, WORLD)
        assert not bool(hit)
        assert np.array_equal(out.velocity, ball.velocity)

    def test_momentum_bound(self):
        rng = derive_rng(2, 0)
        for _ in range(10_000):
            dom = sample_control_domain(rng)
            ball = sw.make_ball_state(WORLD, dom, rng.uniform(-0.1, 0.1, 3))
            ball.velocity[...] = [rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0]
            offset = rng.uniform(-1, 1, 3) * [0.1, 0.1, 0.05]
            toe = ball.position + offset
            toe_vel = np.array([rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-2, 2)])
            out, hit = sw.resolve_kick_contact(toe, toe_vel, ball, dom, WORLD)
            dp = float(ball.mass) * np.linalg.norm(out.velocity - ball.velocity)
            m_eff = WORLD.foot_mass * dom.link_mass_scale
            bound = (1 + WORLD.restitution) * m_eff * np.linalg.norm(toe_vel - ball.velocity)
            assert dp <= bound + 1e-9


class TestWorldDeterminism:
    def test_identical_seeds_bitwise_identical(self):
        def run():
            world = sw.World(4, WORLD, ball_variant="rigid", rng=derive_rng(5, 0))
            rng = derive_rng(5, 1)
            for i in range(4):
                world.reset_env(i, sample_control_domain(rng))
                world.spawn_ball(i, np.array([0.4, -0.1]))
            cmds = np.tile(sw.nominal_joint_angles(WORLD), (4, 1))
            for k in range(60):
                wiggle = 0.3 * np.sin(0.2 * k + np.arange(12))
                world.tick(cmds + wiggle, 33, contact_enabled=np.ones(4, bool),
                           goal_xy=np.tile([2.0, 0.0], (4, 1)))
            return world.robot.q.copy(), world.ball.position.copy()

        q1, b1 = run()
        q2, b2 = run()
        assert np.array_equal(q1, q2)
        assert np.array_equal(b1, b2)

    def test_tick_counts_substeps(self):
        world = sw.World(2, WORLD, rng=derive_rng(6, 0))
        for i in range(2):
            world.reset_env(i, DomainParams.nominal())
        cmds = np.tile(sw.nominal_joint_angles(WORLD), (2, 1))
        res = world.tick(cmds, 34)
        assert res.substeps == 34
        assert world.physics_steps == 34

    def test_non_finite_command_faults(self):
        world = sw.World(1, WORLD, rng=derive_rng(7, 0))
        world.reset_env(0, DomainParams.nominal())
        bad = np.full((1, 12), np.inf)
        with pytest.raises(SimulationFault):
            world.tick(bad, 33)
