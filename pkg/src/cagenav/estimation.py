"""Collision estimation: intensity, direction, and cage contact point.

Turns the peak accelerometer sample of a detected impact into a
CollisionEvent.  The impact acceleration is the negated, gravity-compensated
specific force; its magnitude is the collision intensity, its spherical
angles give the collision direction, and scaling that unit direction by the
cage radius places the contact point on the cage sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from cagenav.detection import ImuSample
from cagenav.geometry import GRAVITY, gravity_in_body

_MIN_INTENSITY = 1e-6


class DegenerateInputError(ValueError):
    """Raised when the impact acceleration has no usable direction."""


@dataclass(frozen=True)
class CageModel:
    """Spherical approximation of the protective cage."""

    radius_l: float = 0.23

    def __post_init__(self):
        if self.radius_l <= 0:
            raise ValueError("cage radius must be positive")


@dataclass(frozen=True)
class CollisionEvent:
    """Estimated impact: when, how hard, from where.

    ``direction`` is the unit vector from the drone center toward the
    contact, in the body frame.  ``theta`` is the polar angle from body +z
    and ``phi`` the azimuth from body +x, radians.  ``point_body`` lies on
    the cage sphere.
    """

    t: float
    intensity_c: float
    direction: np.ndarray
    theta: float
    phi: float
    point_body: np.ndarray
    accel_c: np.ndarray


def collision_acceleration(sample: ImuSample, g: float = GRAVITY) -> np.ndarray:
    """Negated measured acceleration with gravity removed.

    Compensation uses the full body-frame gravity vector, so it cancels
    exactly at any attitude; at level attitude it reduces to
    (-a_x, -a_y, -(a_z - g)).
    """
    return -(sample.accel - gravity_in_body(sample.attitude, g))


def estimate(a_c: np.ndarray, cage: CageModel, t: float = 0.0) -> CollisionEvent:
    """Build a CollisionEvent from the impact acceleration vector."""
    a_c = np.asarray(a_c, dtype=float)
    intensity = float(np.linalg.norm(a_c))
    if intensity < _MIN_INTENSITY:
        raise DegenerateInputError(
            f"impact acceleration norm {intensity:.3e} is too small to orient"
        )
    planar = math.hypot(a_c[0], a_c[1])
    theta = math.atan2(planar, a_c[2])
    # azimuth is undefined on the poles; pin it to 0 for determinism
    phi = math.atan2(a_c[1], a_c[0]) if planar > 0.0 else 0.0
    direction = np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )
    return CollisionEvent(
        t=t,
        intensity_c=intensity,
        direction=direction,
        theta=theta,
        phi=phi,
        point_body=direction * cage.radius_l,
        accel_c=a_c,
    )


def estimate_from_sample(
    sample: ImuSample, cage: CageModel, g: float = GRAVITY
) -> CollisionEvent:
    """Convenience: collision_acceleration + estimate in one call."""
    return estimate(collision_acceleration(sample, g), cage, t=sample.t)
