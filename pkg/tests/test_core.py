"""Frames, trajectories, light time and velocity composition."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dopplerkit import (
    C_LIGHT,
    EARTH,
    DomainError,
    EarthModel,
    FrameRotation,
    Trajectory,
    Vec3,
    elevation_angle,
    relativistic_velocity_add,
    rotation_ecef_to_eci,
    rotation_eci_to_ecef,
    solve_light_time,
    station_velocity_ecef,
    station_velocity_eci,
)
from dopplerkit.numerics import solve_bracketed


# --- Vec3 ---

def test_vec3_algebra():
    a = Vec3(1.0, 2.0, 3.0)
    b = Vec3(-1.0, 0.5, 2.0)
    assert (a + b).as_tuple() == (0.0, 2.5, 5.0)
    assert (a - b).as_tuple() == (2.0, 1.5, 1.0)
    assert (2.0 * a).as_tuple() == (2.0, 4.0, 6.0)
    assert a.dot(b) == pytest.approx(1.0 * -1.0 + 2.0 * 0.5 + 3.0 * 2.0)
    assert a.cross(b).dot(a) == pytest.approx(0.0, abs=1e-12)
    assert abs(Vec3(3.0, 4.0, 0.0).norm() - 5.0) < 1e-15


def test_vec3_rejects_non_finite():
    with pytest.raises(DomainError):
        Vec3(math.nan, 0.0, 0.0)
    with pytest.raises(DomainError):
        Vec3(0.0, math.inf, 0.0)


def test_vec3_unit_zero_rejected():
    with pytest.raises(DomainError):
        Vec3.zero().unit()


# --- Rotations ---

def test_rotation_identity_at_t0():
    r = rotation_eci_to_ecef(0.0)
    assert r.rows == FrameRotation.identity().rows


def test_rotation_quarter_turn():
    t = (math.pi / 2.0) / EARTH.omega_e
    mapped = rotation_eci_to_ecef(t).apply(Vec3(1.0, 0.0, 0.0))
    assert mapped.x == pytest.approx(0.0, abs=1e-9)
    assert mapped.y == pytest.approx(-1.0, abs=1e-9)
    assert mapped.z == 0.0


@given(st.floats(min_value=-1e7, max_value=1e7, allow_nan=False))
@settings(max_examples=200)
def test_rotation_orthonormal_random_t(t):
    m = np.array(rotation_eci_to_ecef(t).rows)
    assert np.max(np.abs(m @ m.T - np.eye(3))) < 1e-12
    assert np.linalg.det(m) == pytest.approx(1.0, abs=1e-12)


@given(st.floats(min_value=-1e7, max_value=1e7, allow_nan=False))
@settings(max_examples=100)
def test_rotation_roundtrip_is_identity(t):
    fwd = np.array(rotation_eci_to_ecef(t).rows)
    back = np.array(rotation_ecef_to_eci(t).rows)
    assert np.max(np.abs(fwd @ back - np.eye(3))) < 1e-12


def test_frame_rotation_rejects_non_orthonormal():
    with pytest.raises(DomainError):
        FrameRotation(((1.0, 0.1, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))


def test_frame_rotation_rejects_reflection():
    with pytest.raises(DomainError):
        FrameRotation(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, -1.0)))


# --- Station velocity ---

def test_station_velocity_equatorial():
    v = station_velocity_eci(Vec3.zero(), Vec3(EARTH.a1, 0.0, 0.0), 0.0, EARTH)
    assert v.x == pytest.approx(0.0, abs=1e-9)
    assert v.y == pytest.approx(465.10, abs=0.01)
    assert v.z == 0.0


def test_station_velocity_zero_rotation():
    earth = EarthModel(omega_e=0.0)
    v = station_velocity_eci(Vec3.zero(), Vec3(earth.a1, 0.0, 0.0), 100.0, earth)
    assert v.norm() == 0.0


def test_station_velocity_relativistic_factor_tiny_on_ground():
    r = Vec3(EARTH.a1, 0.0, 0.0)
    plain = station_velocity_eci(Vec3.zero(), r, 0.0, EARTH, relativistic=False)
    rel = station_velocity_eci(Vec3.zero(), r, 0.0, EARTH, relativistic=True)
    assert (plain - rel).norm() / plain.norm() < 1e-11


def test_station_velocity_rejects_superluminal():
    with pytest.raises(DomainError):
        station_velocity_eci(Vec3(C_LIGHT, 0.0, 0.0), Vec3.zero(), 0.0)


def test_station_velocity_roundtrip_ecef():
    v_ecef = Vec3(12.0, -34.0, 5.0)
    r_ecef = Vec3(EARTH.a1, 1e5, -2e5)
    t = 5432.1
    v_eci = station_velocity_eci(v_ecef, r_ecef, t, EARTH)
    back = station_velocity_ecef(v_eci, r_ecef, t, EARTH)
    assert (back - v_ecef).norm() < 1e-9


# --- Light time ---

def test_light_time_static_one_second():
    src = Trajectory.static(Vec3.zero())
    obs = Trajectory.static(Vec3(C_LIGHT, 0.0, 0.0))
    t_arr, path = solve_light_time(src, obs, 0.0, C_LIGHT)
    assert t_arr == pytest.approx(1.0, abs=1e-12)
    assert path == pytest.approx(C_LIGHT, rel=1e-15)


def test_light_time_ball_analog_first_crest():
    # wave speed 10 m/s, receiver 30 m away receding at 5 m/s
    src = Trajectory.static(Vec3.zero())
    obs = Trajectory.uniform(Vec3(30.0, 0.0, 0.0), Vec3(5.0, 0.0, 0.0))
    t_arr, path = solve_light_time(src, obs, 0.0, 10.0)
    assert t_arr == pytest.approx(6.0, abs=1e-12)
    assert path == pytest.approx(60.0, abs=1e-10)


@given(
    st.floats(min_value=1.0, max_value=1e9),
    st.floats(min_value=0.0, max_value=0.9),
)
@settings(max_examples=200)
def test_light_time_matches_receding_closed_form(d0, beta):
    v = beta * C_LIGHT
    src = Trajectory.static(Vec3.zero())
    obs = Trajectory.uniform(Vec3(d0, 0.0, 0.0), Vec3(v, 0.0, 0.0))
    t_arr, _ = solve_light_time(src, obs, 0.0, C_LIGHT)
    expected = d0 / (C_LIGHT - v)
    assert abs(t_arr - expected) <= 1e-12 * max(1.0, expected)


def test_light_time_superluminal_observer():
    src = Trajectory.static(Vec3.zero())
    obs = Trajectory.uniform(Vec3(30.0, 0.0, 0.0), Vec3(11.0, 0.0, 0.0))
    with pytest.raises(DomainError):
        solve_light_time(src, obs, 0.0, 10.0)


def test_light_time_rejects_nonpositive_speed():
    src = Trajectory.static(Vec3.zero())
    with pytest.raises(DomainError):
        solve_light_time(src, src, 0.0, 0.0)


# --- Velocity addition ---

def test_velocity_add_half_c_twice():
    u = relativistic_velocity_add(C_LIGHT / 2.0, C_LIGHT / 2.0)
    assert u == pytest.approx(0.8 * C_LIGHT, rel=1e-15)


def test_velocity_add_identity():
    assert relativistic_velocity_add(12345.6, 0.0) == 12345.6


def test_velocity_add_rejects_luminal():
    with pytest.raises(DomainError):
        relativistic_velocity_add(C_LIGHT, 0.0)


def test_velocity_add_sweep_stays_subluminal():
    rng = np.random.default_rng(20260816)
    pairs = rng.uniform(-0.999999, 0.999999, size=(1_000_000, 2)) * C_LIGHT
    c2 = C_LIGHT * C_LIGHT
    u = (pairs[:, 0] + pairs[:, 1]) / (1.0 + pairs[:, 0] * pairs[:, 1] / c2)
    assert np.all(np.abs(u) < C_LIGHT)
    # spot-check the vectorized sweep against the scalar operation
    for v, v2 in pairs[:100]:
        got = relativistic_velocity_add(float(v), float(v2))
        assert abs(got) < C_LIGHT


@given(
    st.floats(min_value=-0.99, max_value=0.99),
    st.floats(min_value=-0.99, max_value=0.99),
)
@settings(max_examples=300)
def test_velocity_add_commutative(b1, b2):
    v = b1 * C_LIGHT
    v2 = b2 * C_LIGHT
    left = relativistic_velocity_add(v, v2)
    right = relativistic_velocity_add(v2, v)
    assert left == right
    assert abs(left) < C_LIGHT


# --- Elevation geometry ---

GPS_RS = 26_560_000.0
GPS_OMEGA = 2.0 * math.pi / 43_082.0


def test_elevation_zenith_at_t0():
    assert elevation_angle(0.0, EARTH, GPS_RS, 0.0, GPS_OMEGA) == pytest.approx(
        math.pi / 2.0
    )


def test_elevation_below_horizon_at_quarter_orbit():
    t = (math.pi / 2.0) / GPS_OMEGA
    th = elevation_angle(t, EARTH, GPS_RS, 0.0, GPS_OMEGA)
    assert th < 0.0
    assert th == pytest.approx(math.atan2(-EARTH.R, GPS_RS), abs=1e-12)


def test_elevation_horizon_crossing_matches_geometry():
    # theta_E crosses zero where Rs cos(omega t) = R + hT
    t_cross = solve_bracketed(
        lambda t: elevation_angle(t, EARTH, GPS_RS, 0.0, GPS_OMEGA),
        1.0,
        (math.pi / 2.0) / GPS_OMEGA,
        xtol=1e-10,
    )
    assert GPS_RS * math.cos(GPS_OMEGA * t_cross) == pytest.approx(
        EARTH.R, rel=1e-9
    )


@given(st.floats(min_value=0.0, max_value=10_000.0))
@settings(max_examples=200)
def test_elevation_symmetric_about_zenith(t):
    # sin(theta_E) is even in t: the pass is symmetric about the overhead instant
    up = math.sin(elevation_angle(t, EARTH, GPS_RS, 0.0, GPS_OMEGA))
    down = math.sin(elevation_angle(-t, EARTH, GPS_RS, 0.0, GPS_OMEGA))
    assert up == pytest.approx(down, abs=1e-12)


def test_elevation_rejects_buried_satellite():
    with pytest.raises(DomainError):
        elevation_angle(0.0, EARTH, 1000.0, 0.0, GPS_OMEGA)


# --- Trajectories ---

def test_trajectory_kinds_evaluate():
    stat = Trajectory.static(Vec3(1.0, 2.0, 3.0))
    assert stat.position(99.0).as_tuple() == (1.0, 2.0, 3.0)
    assert stat.velocity(99.0).norm() == 0.0

    uni = Trajectory.uniform(Vec3(1.0, 0.0, 0.0), Vec3(0.0, 2.0, 0.0))
    assert uni.position(2.0).as_tuple() == (1.0, 4.0, 0.0)
    assert uni.velocity(2.0).as_tuple() == (0.0, 2.0, 0.0)

    lin = Trajectory.linear_accel(Vec3(2.0, 0.0, 0.0), r0=10.0, v0=1.0, accel=2.0)
    assert lin.position(2.0).x == pytest.approx(10.0 + 2.0 + 4.0)
    assert lin.velocity(2.0).x == pytest.approx(5.0)

    circ = Trajectory.circular(Vec3.zero(), radius=2.0, omega=math.pi, phase0=0.0)
    assert circ.position(1.0).x == pytest.approx(-2.0)
    assert circ.velocity(0.0).y == pytest.approx(2.0 * math.pi)


def test_trajectory_circular_speed_constant():
    circ = Trajectory.circular(Vec3(1.0, 1.0, 1.0), radius=3.0, omega=0.5, phase0=0.3)
    speeds = [circ.velocity(t).norm() for t in np.linspace(0.0, 20.0, 50)]
    assert all(s == pytest.approx(1.5, rel=1e-12) for s in speeds)


def test_trajectory_sampled_tracks_polynomial():
    ts = np.linspace(0.0, 4.0, 30)
    pts = [(float(t), Vec3(float(t**2), float(3.0 * t), 1.0)) for t in ts]
    traj = Trajectory.sampled(pts)
    assert traj.position(2.345).x == pytest.approx(2.345**2, rel=1e-6)
    assert traj.velocity(2.345).x == pytest.approx(2.0 * 2.345, rel=1e-5)
    assert traj.velocity(2.345).y == pytest.approx(3.0, rel=1e-9)


def test_trajectory_sampled_validation():
    with pytest.raises(DomainError):
        Trajectory.sampled([(0.0, Vec3.zero())])
    with pytest.raises(DomainError):
        Trajectory.sampled([(0.0, Vec3.zero()), (0.0, Vec3(1.0, 0.0, 0.0))])


def test_trajectory_circular_validation():
    with pytest.raises(DomainError):
        Trajectory.circular(Vec3.zero(), radius=0.0, omega=1.0)


def test_earth_model_validation():
    with pytest.raises(DomainError):
        EarthModel(J2=0.5)
    with pytest.raises(DomainError):
        EarthModel(R=-1.0)
