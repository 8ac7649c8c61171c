"""Deterministic RNG stream derivation.

Every random draw in a run descends from one root seed. Components get
independent streams through SeedSequence spawn keys instead of seed
arithmetic, so adding a stream never perturbs existing ones.
"""

from __future__ import annotations

import numpy as np

# Fixed component ids used as the first spawn-key entry.
STREAM_DOMAIN = 0
STREAM_MOTION = 1
STREAM_SENSOR = 2
STREAM_POLICY_INIT = 3
STREAM_ACTION = 4
STREAM_TRAINER = 5
STREAM_EVAL = 6
STREAM_BALL = 7


def derive_rng(root_seed: int, *path: int) -> np.random.Generator:
    """Return a Generator for the stream identified by ``path`` under ``root_seed``."""
    ss = np.random.SeedSequence(entropy=int(root_seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.PCG64(ss))
