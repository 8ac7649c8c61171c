"""Quartic Bezier curves for end-effector reference trajectories.

A trajectory is five 3D control points evaluated over a normalized phase
t in [0, 1]; the phase advances in wall-clock time scaled by the motion
time span. Degree is fixed at four: the containers reject any other
point count rather than generalizing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEGREE = 4
NUM_POINTS = DEGREE + 1
COORD_BOUND_M = 2.0  # loose leg-workspace sanity bound; violations mean planner blow-up

_BINOM4 = np.array([1.0, 4.0, 6.0, 4.0, 1.0])
_BINOM3 = np.array([1.0, 3.0, 3.0, 1.0])
_BINOM2 = np.array([1.0, 2.0, 1.0])


@dataclass(frozen=True)
class Phase:
    """Normalized progress ``t`` through a motion with wall-clock span seconds."""

    t: float
    span: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.t) or not (0.0 <= self.t <= 1.0):
            raise ValueError(f"phase t must lie in [0, 1], got {self.t}")
        if not np.isfinite(self.span) or self.span <= 0.0:
            raise ValueError(f"span must be positive, got {self.span}")


@dataclass(frozen=True)
class BezierParams:
    """Five 3D control points, body frame, meters. Index i holds point i."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.shape != (NUM_POINTS, 3):
            raise ValueError(f"expected {NUM_POINTS} control points of dim 3, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("control points must be finite")
        if np.any(np.abs(pts) > COORD_BOUND_M):
            raise ValueError(f"control point magnitude exceeds {COORD_BOUND_M} m bound")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_flat(cls, flat) -> "BezierParams":
        """Build from the row-major 15-element layout used in checkpoints and logs."""
        arr = np.asarray(flat, dtype=np.float64)
        if arr.shape != (NUM_POINTS * 3,):
            raise ValueError(f"expected flat array of length {NUM_POINTS * 3}, got {arr.shape}")
        return cls(arr.reshape(NUM_POINTS, 3))

    def to_flat(self) -> np.ndarray:
        """Row-major 15-element serialization (x0, y0, z0, ..., x4, y4, z4)."""
        return self.points.reshape(-1).copy()


def bernstein_weights(t) -> np.ndarray:
    """Quartic Bernstein basis at ``t``; shape ``t.shape + (5,)``, rows sum to 1."""
    t = np.asarray(t, dtype=np.float64)
    i = np.arange(NUM_POINTS, dtype=np.float64)
    tt = t[..., None]
    return _BINOM4 * (1.0 - tt) ** (DEGREE - i) * tt**i


def _phase_value(t) -> float:
    if isinstance(t, Phase):
        return t.t
    tv = float(t)
    if not np.isfinite(tv) or not (0.0 <= tv <= 1.0):
        raise ValueError(f"phase t must lie in [0, 1], got {tv}")
    return tv


def evaluate(params: BezierParams, t) -> np.ndarray:
    """Curve position at phase ``t`` (Phase or float): convex combination of the points."""
    tv = _phase_value(t)
    return bernstein_weights(tv) @ params.points


def derivative(params: BezierParams, t, order: int = 1, wall_clock: bool = False) -> np.ndarray:
    """Analytic first or second curve derivative at phase ``t``.

    Defaults to phase units (per unit t). With ``wall_clock=True`` the result
    is divided by span (order 1) or span squared (order 2); ``t`` must then be
    a Phase so the span is known.
    """
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    tv = _phase_value(t)
    d1 = DEGREE * np.diff(params.points, axis=0)  # degree-3 control points
    if order == 1:
        tt = np.float64(tv)
        i = np.arange(DEGREE, dtype=np.float64)
        w = _BINOM3 * (1.0 - tt) ** (DEGREE - 1 - i) * tt**i
        out = w @ d1
    else:
        d2 = (DEGREE - 1) * np.diff(d1, axis=0)  # degree-2 control points
        i = np.arange(DEGREE - 1, dtype=np.float64)
        w = _BINOM2 * (1.0 - tv) ** (DEGREE - 2 - i) * tv**i
        out = w @ d2
    if wall_clock:
        if not isinstance(t, Phase):
            raise ValueError("wall-clock derivatives need a Phase carrying the span")
        out = out / t.span**order
    return out


def evaluate_many(points: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Vectorized evaluate: ``points`` (..., 5, 3) and ``t`` (...,) -> (..., 3)."""
    w = bernstein_weights(t)
    return np.einsum("...p,...pc->...c", w, points)
