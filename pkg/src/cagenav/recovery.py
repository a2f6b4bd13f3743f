"""Collision recovery: reaction position and the simple position controller.

The recovery position blends the pure bounce-back (opposite the collision
direction) with the mapped-obstacle escape direction (the distance-field
gradient), weighted by how close the nearest known obstacle is.  The
resulting body-frame offset is transformed to a world setpoint and handed
straight to the position controller, bypassing the planner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from cagenav.estimation import CollisionEvent
from cagenav.geometry import Pose, transform_point

_GRAD_EPS = 1e-9

# Distance query against the pre-collision map: position -> (distance m,
# gradient vector).  The gradient need not be normalized.
MapQuery = Callable[[np.ndarray], tuple[float, np.ndarray]]


@dataclass(frozen=True)
class RecoveryConfig:
    d_star: float = 1.0             # m, obstacle influence upper bound
    reaction_distance: float = 0.46  # m, recovery offset scale (2 * cage radius)
    cage_radius: float = 0.23        # m

    def __post_init__(self):
        if not (self.d_star > self.cage_radius > 0):
            raise ValueError("require d_star > cage_radius > 0")
        if self.reaction_distance <= 0:
            raise ValueError("reaction distance must be positive")


@dataclass(frozen=True)
class RecoveryCommand:
    setpoint_world: np.ndarray
    issued_t: float


def recovery_weight(d: float, cfg: RecoveryConfig) -> float:
    """Blend weight for the mapped-obstacle term.

    1 when the nearest known obstacle touches the cage, monotonically
    falling to 0 at d_star and beyond.  d below the cage radius is clamped
    up to it (the closest real obstacle must be outside the cage).
    """
    l, ds = cfg.cage_radius, cfg.d_star
    d = max(d, l)
    if d > ds:
        return 0.0
    return (l**3 * (d - ds)) / (d**3 * (l - ds))


def recovery_position_body(
    direction: np.ndarray,
    edt_gradient: np.ndarray,
    d: float,
    cfg: RecoveryConfig,
) -> np.ndarray:
    """Body-frame recovery offset.

    Convex combination of the normalized distance-field gradient and the
    negated collision direction, scaled by the reaction distance.  A
    vanishing gradient (unknown space, equidistant obstacles) falls back to
    the pure bounce.
    """
    direction = np.asarray(direction, dtype=float)
    g = np.asarray(edt_gradient, dtype=float)
    w = recovery_weight(d, cfg)
    gnorm = float(np.linalg.norm(g))
    if w == 0.0 or gnorm < _GRAD_EPS:
        return -direction * cfg.reaction_distance
    return (w * g / gnorm - (1.0 - w) * direction) * cfg.reaction_distance


def issue_recovery(
    event: CollisionEvent,
    pose: Pose,
    map_query: MapQuery,
    cfg: RecoveryConfig,
) -> RecoveryCommand:
    """World-frame recovery setpoint for a collision event.

    ``map_query`` must answer from the pre-collision map, i.e. before the
    impact's own point cloud is registered, so the reaction is immediate.
    """
    d, gradient = map_query(pose.translation)
    p_r = recovery_position_body(event.direction, gradient, d, cfg)
    return RecoveryCommand(
        setpoint_world=transform_point(pose, p_r),
        issued_t=event.t,
    )


@dataclass
class PositionController:
    """Saturated PD position controller standing in for the autopilot.

    Gains give well-damped sub-second settling over reaction-distance
    errors, which the recovery timing budget requires.
    """

    kp: float = 12.0   # s^-2
    kd: float = 6.0    # s^-1
    a_max: float = 8.0  # m/s^2

    def step(
        self, position: np.ndarray, velocity: np.ndarray, setpoint: np.ndarray
    ) -> np.ndarray:
        cmd = self.kp * (np.asarray(setpoint, float) - position) - self.kd * velocity
        n = float(np.linalg.norm(cmd))
        if n > self.a_max:
            cmd = cmd * (self.a_max / n)
        return cmd
