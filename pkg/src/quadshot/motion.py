"""Shooting-maneuver motion machinery.

A maneuver cycles standing -> lifting -> kicking -> resting through a
rule-based selector. Each motion carries its own Bezier curve and time
span; training draws randomized variants around hand-crafted nominals.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum

import numpy as np

from .bezier import NUM_POINTS, BezierParams


class Motion(IntEnum):
    STANDING = 0
    LIFTING = 1
    KICKING = 2
    RESTING = 3


# Per-motion time-span sampling ranges, seconds.
SPAN_RANGES_S: dict[Motion, tuple[float, float]] = {
    Motion.STANDING: (1.0, 4.0),
    Motion.LIFTING: (3.0, 4.0),
    Motion.KICKING: (0.2, 0.4),
    Motion.RESTING: (1.0, 3.0),
}

# Uniform offset ranges added per coordinate to nominal control points, meters.
ALPHA_OFFSET_ENDS_M = (-0.1, 0.1)  # points 0, 1, 4
ALPHA_OFFSET_MID_M = (-0.1, 0.3)  # points 2, 3
_POINT_OFFSET_RANGES = (
    ALPHA_OFFSET_ENDS_M,
    ALPHA_OFFSET_ENDS_M,
    ALPHA_OFFSET_MID_M,
    ALPHA_OFFSET_MID_M,
    ALPHA_OFFSET_ENDS_M,
)

CYCLE_ORDER = (Motion.STANDING, Motion.LIFTING, Motion.KICKING, Motion.RESTING)


@dataclass(frozen=True)
class MotionSpec:
    """One concrete motion: indicator, its curve, and its span in seconds."""

    indicator: Motion
    params: BezierParams
    span: float

    def __post_init__(self) -> None:
        if self.span <= 0:
            raise ValueError(f"span must be positive, got {self.span}")


def _line_curve(start, end) -> BezierParams:
    pts = np.linspace(np.asarray(start, float), np.asarray(end, float), NUM_POINTS)
    return BezierParams(pts)


@dataclass(frozen=True)
class NominalMotionCatalog:
    """Hand-crafted nominal motion per indicator.

    Standing holds the toe at the stance foothold; lifting raises it to the
    hold point; kicking sweeps forward through the ball corridor; resting
    returns to the foothold.
    """

    standing: MotionSpec
    lifting: MotionSpec
    kicking: MotionSpec
    resting: MotionSpec

    def __post_init__(self) -> None:
        for name, delta in (("standing", 0), ("lifting", 1), ("kicking", 2), ("resting", 3)):
            spec = getattr(self, name)
            if spec.indicator != delta:
                raise ValueError(f"{name} spec carries indicator {spec.indicator}")
        kx = self.kicking.params.points[:3, 0]
        if not np.all(np.diff(kx) > 0):
            raise ValueError("kicking nominal must sweep forward: x of points 0..2 increasing")
        stand = self.standing.params.points
        if not np.allclose(stand, stand[0]):
            raise ValueError("standing nominal must hold the toe at one point")

    def spec_for(self, delta: Motion) -> MotionSpec:
        return (self.standing, self.lifting, self.kicking, self.resting)[int(delta)]

    @classmethod
    def from_config(cls, cfg: dict) -> "NominalMotionCatalog":
        """Build from the run-config motion section (foothold/hold/kick points)."""
        foothold = np.asarray(cfg["foothold"], float)
        hold = np.asarray(cfg["lift_hold"], float)
        kick_pts = np.asarray(cfg["kick_points"], float)
        mid = lambda lo_hi: 0.5 * (lo_hi[0] + lo_hi[1])
        spans = cfg.get("nominal_spans", {m.name.lower(): mid(SPAN_RANGES_S[m]) for m in Motion})
        stand = MotionSpec(Motion.STANDING, _line_curve(foothold, foothold), spans["standing"])
        lift = MotionSpec(Motion.LIFTING, _line_curve(foothold, hold), spans["lifting"])
        kick = MotionSpec(Motion.KICKING, BezierParams(kick_pts), spans["kicking"])
        rest = MotionSpec(
            Motion.RESTING, _line_curve(kick_pts[-1], foothold), spans["resting"]
        )
        return cls(stand, lift, kick, rest)


DEFAULT_FOOTHOLD = (0.18, -0.13, 0.02)
DEFAULT_LIFT_HOLD = (0.16, -0.13, 0.11)
DEFAULT_KICK_POINTS = (
    (0.16, -0.13, 0.10),
    (0.22, -0.13, 0.10),
    (0.30, -0.13, 0.09),
    (0.38, -0.13, 0.06),
    (0.45, -0.13, 0.03),
)


def default_catalog() -> NominalMotionCatalog:
    return NominalMotionCatalog.from_config(
        {
            "foothold": DEFAULT_FOOTHOLD,
            "lift_hold": DEFAULT_LIFT_HOLD,
            "kick_points": DEFAULT_KICK_POINTS,
        }
    )


def step_selector(
    current: Motion,
    elapsed_in_motion: float,
    span: float,
    kick_commanded: bool,
    new_maneuver: bool = False,
) -> Motion:
    """Advance the rule-based motion selector; total over all inputs.

    Standing starts lifting when a new maneuver begins (or its span runs out,
    which is how scheduled maneuvers begin). Lifting completes its curve and
    then holds the leg in the air until the kick is commanded. Kicking and
    resting hand over when their spans elapse.
    """
    current = Motion(current)
    if elapsed_in_motion < 0:
        raise ValueError("elapsed_in_motion must be non-negative")
    if current == Motion.STANDING:
        if new_maneuver or elapsed_in_motion >= span:
            return Motion.LIFTING
    elif current == Motion.LIFTING:
        if kick_commanded and elapsed_in_motion >= span:
            return Motion.KICKING
    elif current == Motion.KICKING:
        if elapsed_in_motion >= span:
            return Motion.RESTING
    elif current == Motion.RESTING:
        if elapsed_in_motion >= span:
            return Motion.STANDING
    return current


def randomize_motion(
    nominal: NominalMotionCatalog, delta: Motion, rng: np.random.Generator
) -> MotionSpec:
    """Sample a motion around its nominal: span from the per-motion range and,
    for every motion but standing, per-coordinate curve offsets.

    Standing keeps its nominal curve; only its span is randomized.
    """
    delta = Motion(delta)
    spec = nominal.spec_for(delta)
    lo, hi = SPAN_RANGES_S[delta]
    span = float(rng.uniform(lo, hi))
    if delta == Motion.STANDING:
        return replace(spec, span=span)
    offsets = np.empty((NUM_POINTS, 3))
    for i, (olo, ohi) in enumerate(_POINT_OFFSET_RANGES):
        offsets[i] = rng.uniform(olo, ohi, size=3)
    return MotionSpec(delta, BezierParams(spec.params.points + offsets), span)


def chain_continuity(spec: MotionSpec, previous_end: np.ndarray) -> MotionSpec:
    """Overwrite the curve start with the previous motion's end point.

    Keeps the pieced-together reference position-continuous; standing becomes
    a hold at wherever the toe ended up.
    """
    pts = spec.params.points.copy()
    if spec.indicator == Motion.STANDING:
        pts[:] = previous_end
    else:
        pts[0] = previous_end
    return replace(spec, params=BezierParams(pts))


def draw_maneuver(
    nominal: NominalMotionCatalog,
    rng: np.random.Generator,
    start_point: np.ndarray | None = None,
) -> list[MotionSpec]:
    """Sample one full randomized maneuver with endpoint continuity enforced."""
    prev_end = (
        np.asarray(start_point, float)
        if start_point is not None
        else nominal.standing.params.points[-1]
    )
    out = []
    for delta in CYCLE_ORDER:
        spec = chain_continuity(randomize_motion(nominal, delta, rng), prev_end)
        prev_end = spec.params.points[-1]
        out.append(spec)
    return out
