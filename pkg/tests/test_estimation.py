import math

import numpy as np
import pytest

from cagenav.detection import ImuSample
from cagenav.estimation import (
    CageModel,
    DegenerateInputError,
    collision_acceleration,
    estimate,
    estimate_from_sample,
)
from cagenav.geometry import Rotation, vec3

CAGE = CageModel(radius_l=0.23)


def direction_from_angles(theta, phi):
    return np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )


def test_collision_acceleration_level_hover_zero():
    s = ImuSample(0.0, vec3(0, 0, 9.81))
    assert np.allclose(collision_acceleration(s), [0, 0, 0], atol=1e-12)


def test_collision_acceleration_level_sign_flip():
    s = ImuSample(0.0, vec3(-20, 0, 9.81))
    assert np.allclose(collision_acceleration(s), [20, 0, 0], atol=1e-12)


def test_collision_acceleration_tilted_hover_cancels():
    # 10 deg roll: a hover-equivalent specific force still compensates to ~0.
    att = Rotation.about_x(np.deg2rad(10)).inverse()
    g_body = 9.81 * att.matrix @ np.array([0.0, 0.0, 1.0])
    s = ImuSample(0.0, g_body, att)
    assert np.linalg.norm(collision_acceleration(s)) < 1e-9


def test_estimate_axis_aligned():
    ev = estimate(vec3(20, 0, 0), CAGE)
    assert ev.intensity_c == pytest.approx(20.0)
    assert ev.theta == pytest.approx(math.pi / 2)
    assert ev.phi == pytest.approx(0.0)
    assert np.allclose(ev.direction, [1, 0, 0], atol=1e-12)
    assert np.allclose(ev.point_body, [0.23, 0, 0], atol=1e-12)


def test_estimate_pole_case():
    # impact from straight above: theta = 0, phi pinned to 0
    ev = estimate(vec3(0, 0, 15), CAGE)
    assert ev.theta == pytest.approx(0.0)
    assert ev.phi == 0.0
    assert np.allclose(ev.direction, [0, 0, 1], atol=1e-12)
    assert np.allclose(ev.point_body, [0, 0, 0.23], atol=1e-12)


def test_estimate_3_4_5_triangle():
    ev = estimate(vec3(3, 4, 0), CAGE)
    assert ev.intensity_c == pytest.approx(5.0)
    assert ev.phi == pytest.approx(math.atan2(4, 3))
    assert ev.phi == pytest.approx(0.9273, abs=1e-4)
    assert ev.theta == pytest.approx(math.pi / 2)
    assert np.allclose(ev.direction, [0.6, 0.8, 0], atol=1e-12)


def test_estimate_front_left_low_impact_angles():
    # Reference front-left, slightly-below-horizontal impact: building the
    # impact vector from phi=102.1deg, theta=94.2deg must estimate the same
    # angles back (the angle formulas invert the direction decomposition).
    phi_ref = math.radians(102.1)
    theta_ref = math.radians(94.2)
    a_c = 18.0 * direction_from_angles(theta_ref, phi_ref)
    ev = estimate(a_c, CAGE)
    assert math.degrees(ev.phi) == pytest.approx(102.1, abs=1e-9)
    assert math.degrees(ev.theta) == pytest.approx(94.2, abs=1e-9)
    assert ev.direction[2] < 0  # below-horizontal contact


def test_round_trip_random_directions():
    rng = np.random.default_rng(17)
    for _ in range(200):
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        m = 1.0 + 40.0 * rng.random()
        ev = estimate(m * u, CAGE)
        assert np.allclose(ev.direction, u, atol=1e-9)
        assert ev.intensity_c == pytest.approx(m, abs=1e-9)
        assert 0.0 <= ev.theta <= math.pi
        assert -math.pi < ev.phi <= math.pi


def test_point_on_cage_sphere():
    rng = np.random.default_rng(23)
    for _ in range(100):
        a_c = rng.normal(size=3) * 10
        if np.linalg.norm(a_c) < 1e-3:
            continue
        ev = estimate(a_c, CAGE)
        assert np.linalg.norm(ev.point_body) == pytest.approx(0.23, abs=1e-12)


def test_z_rotation_shifts_phi_only():
    rng = np.random.default_rng(29)
    for _ in range(50):
        a_c = rng.normal(size=3) * 10
        if math.hypot(a_c[0], a_c[1]) < 1e-6:
            continue
        alpha = float(rng.uniform(-math.pi, math.pi))
        rot = Rotation.about_z(alpha)
        ev0 = estimate(a_c, CAGE)
        ev1 = estimate(rot.apply(a_c), CAGE)
        dphi = (ev1.phi - ev0.phi - alpha + math.pi) % (2 * math.pi) - math.pi
        assert abs(dphi) < 1e-9
        assert ev1.theta == pytest.approx(ev0.theta, abs=1e-9)
        assert ev1.intensity_c == pytest.approx(ev0.intensity_c, abs=1e-9)


def test_zero_input_rejected():
    with pytest.raises(DegenerateInputError):
        estimate(vec3(0, 0, 0), CAGE)
    with pytest.raises(DegenerateInputError):
        estimate(vec3(1e-9, 0, 0), CAGE)


def test_estimate_from_sample_carries_time():
    s = ImuSample(4.25, vec3(-20, 0, 9.81))
    ev = estimate_from_sample(s, CAGE)
    assert ev.t == 4.25
    assert np.allclose(ev.accel_c, [20, 0, 0], atol=1e-12)
