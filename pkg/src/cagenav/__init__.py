"""Collision detection, recovery, and collision-aware replanning toolkit
for a spherical-cage drone simulated in unknown 3D environments."""

from cagenav.geometry import EZ, GRAVITY, Pose, Rotation, transform_point, vec3

__all__ = [
    "EZ",
    "GRAVITY",
    "Pose",
    "Rotation",
    "transform_point",
    "vec3",
]

__version__ = "0.1.0"
