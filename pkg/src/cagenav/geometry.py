"""Frames, rotations, and small vector helpers shared by the whole pipeline.

Conventions: the world frame is z-up, the body frame is x-forward, y-left,
z-up.  Angles are radians everywhere inside the library; degrees appear only
at I/O boundaries.  Vectors are plain numpy arrays of shape (3,).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

# Unit vector along the world z-axis; gravity acts along -EZ.
EZ = np.array([0.0, 0.0, 1.0])

GRAVITY = 9.81  # m/s^2

_ORTHO_TOL = 1e-9


def vec3(x: float, y: float, z: float) -> np.ndarray:
    """Build a float64 3-vector."""
    return np.array([float(x), float(y), float(z)])


def unit(v: np.ndarray) -> np.ndarray:
    """Normalize v; raises on near-zero input."""
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        raise ValueError("cannot normalize near-zero vector")
    return np.asarray(v, dtype=float) / n


@dataclass(frozen=True)
class Rotation:
    """A proper rotation, stored as a 3x3 orthonormal matrix.

    The matrix meaning (which frame to which) is carried by the call site;
    constructors below build body->world matrices from roll/pitch/yaw.
    """

    matrix: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("rotation matrix must be 3x3")
        if not np.allclose(m.T @ m, np.eye(3), atol=1e-8):
            raise ValueError("rotation matrix is not orthonormal")
        if abs(np.linalg.det(m) - 1.0) > 1e-6:
            raise ValueError("rotation matrix must have determinant +1")
        object.__setattr__(self, "matrix", m)

    @staticmethod
    def identity() -> "Rotation":
        return Rotation(np.eye(3))

    @staticmethod
    def about_x(angle: float) -> "Rotation":
        c, s = math.cos(angle), math.sin(angle)
        return Rotation(np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]))

    @staticmethod
    def about_y(angle: float) -> "Rotation":
        c, s = math.cos(angle), math.sin(angle)
        return Rotation(np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]))

    @staticmethod
    def about_z(angle: float) -> "Rotation":
        c, s = math.cos(angle), math.sin(angle)
        return Rotation(np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]))

    @staticmethod
    def from_rpy(roll: float, pitch: float, yaw: float) -> "Rotation":
        """Body->world rotation from intrinsic z-y-x roll/pitch/yaw."""
        rz = Rotation.about_z(yaw).matrix
        ry = Rotation.about_y(pitch).matrix
        rx = Rotation.about_x(roll).matrix
        return Rotation(rz @ ry @ rx)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def inverse(self) -> "Rotation":
        return Rotation(self.matrix.T)

    def compose(self, other: "Rotation") -> "Rotation":
        """self after other: (self.compose(other)).apply(v) == self(other(v))."""
        return Rotation(self.matrix @ other.matrix)


@dataclass(frozen=True)
class Pose:
    """Rigid transform taking body-frame points to the world frame."""

    rotation: Rotation = field(default_factory=Rotation.identity)
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        t = np.asarray(self.translation, dtype=float)
        if t.shape != (3,) or not np.all(np.isfinite(t)):
            raise ValueError("pose translation must be a finite 3-vector")
        object.__setattr__(self, "translation", t)

    def inverse(self) -> "Pose":
        rinv = self.rotation.inverse()
        return Pose(rinv, -rinv.apply(self.translation))


def transform_point(pose: Pose, p_body: np.ndarray) -> np.ndarray:
    """Map a body-frame point into the world frame."""
    return pose.rotation.apply(p_body) + pose.translation


def transform_points(pose: Pose, points_body: np.ndarray) -> np.ndarray:
    """Vectorized transform_point for an (n, 3) array."""
    pts = np.asarray(points_body, dtype=float)
    return pts @ pose.rotation.matrix.T + pose.translation


def rotate_world_to_body(rot: Rotation, v_world: np.ndarray) -> np.ndarray:
    """Express a world-frame vector in body axes.

    ``rot`` must be the world->body rotation (e.g. an IMU attitude).
    """
    return rot.apply(v_world)


def gravity_in_body(attitude_world_to_body: Rotation, g: float = GRAVITY) -> np.ndarray:
    """Body-frame reading of the +g specific-force vector at level hover."""
    return rotate_world_to_body(attitude_world_to_body, g * EZ)
