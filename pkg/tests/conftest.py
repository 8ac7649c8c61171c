"""Shared test helpers."""

import numpy as np

from quadshot import bezier, simworld as sw


class ScriptedTracker:
    """Hand-written controller: inverse kinematics of a lookahead reference.

    Good enough to exercise environment mechanics end to end without any
    learning; not a substitute for the trained policy.
    """

    def __init__(self, world_params=None, lead_s: float = 0.06):
        self.world = world_params or sw.WorldParams()
        self.lead_s = lead_s
        self.stance = np.asarray(self.world.stance_nominal)
        # planar leg extension stays strictly inside the reachable sphere
        self.max_rho = 0.995 * np.sqrt(
            (sw.THIGH_LEN + sw.CALF_LEN) ** 2 + sw.HIP_LATERAL**2
        )

    def __call__(self, obs: np.ndarray) -> np.ndarray:
        n = obs.shape[0]
        delta = obs[:, 0]
        alpha = obs[:, 1:16].reshape(n, 5, 3)
        span = obs[:, 16]
        phase = obs[:, 17]
        lead_phase = np.clip(self.lead_s / span, 0.0, 0.5)
        # fast kicks need a big phase lead to beat the actuator lag
        lead_phase = np.where(delta == 2, np.maximum(lead_phase, 0.35), lead_phase)
        t = np.clip(phase + lead_phase, 0.0, 1.0)
        ref = bezier.evaluate_many(alpha, t)
        rel = ref - np.array([0.0, 0.0, self.world.base_height]) - sw.HIP_MOUNT
        rho = np.linalg.norm(rel, axis=1)
        scale = np.minimum(1.0, self.max_rho / np.maximum(rho, 1e-9))
        rel = rel * scale[:, None]
        # keep the target outside the hip cylinder
        lat = np.hypot(rel[:, 1], rel[:, 2])
        bad = lat <= abs(sw.HIP_LATERAL) * 1.05
        rel[bad, 2] = -0.15
        cmds = np.tile(self.stance, (n, 1))
        q_fr = sw.ik_leg(rel)
        return np.concatenate([q_fr, cmds], axis=1)
