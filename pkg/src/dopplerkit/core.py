"""Geometry, kinematics, reference frames and light-time solving.

Everything downstream (classical, relativistic, atmospheric, satellite and
acoustic modules) builds on the types here. Units are SI throughout:
meters, seconds, radians. The wave speed is always an explicit parameter
because the validation cases round the speed of light differently (3e8 in
some, the exact SI value in others); C_LIGHT is only the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DomainError, NumericError
from .numerics import fixed_point_damped

C_LIGHT = 299_792_458.0  # m/s, exact by definition


# --- Vectors and states ---

@dataclass(frozen=True)
class Vec3:
    """Cartesian 3-vector. Positions in m, velocities in m/s."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for c in (self.x, self.y, self.z):
            if not math.isfinite(c):
                raise DomainError("vector component is not finite: %r" % (c,))

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> "Vec3":
        return Vec3(self.x / s, self.y / s, self.z / s)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.dot(self))

    def unit(self) -> "Vec3":
        n = self.norm()
        if n == 0.0:
            raise DomainError("cannot normalize a zero vector")
        return self / n

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @staticmethod
    def zero() -> "Vec3":
        return Vec3(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class KinematicState:
    """Position and velocity at a reference time."""

    position: Vec3
    velocity: Vec3


# --- Earth constants ---

@dataclass(frozen=True)
class EarthModel:
    """Earth constants used by frame and gravity operations."""

    R: float = 6_378_137.0           # equatorial radius, m
    omega_e: float = 7.2921159e-5    # rotation rate, rad/s
    GM: float = 3.986004418e14       # gravitational parameter, m^3/s^2
    J2: float = 1.0826300e-3         # quadrupole moment coefficient
    a1: float = 6_378_137.0          # equatorial radius for the oblate potential, m

    def __post_init__(self) -> None:
        if min(self.R, self.GM, self.a1) <= 0.0:
            raise DomainError("EarthModel constants must be positive")
        if self.omega_e < 0.0:  # zero allowed: non-rotating test cases
            raise DomainError("omega_e must be non-negative")
        if not 0.0 <= self.J2 <= 0.01:
            raise DomainError("J2 outside [0, 0.01]: %g" % self.J2)


EARTH = EarthModel()


# --- Trajectories ---

_KINDS = ("static", "uniform", "linear_accel", "circular", "sampled")


@dataclass(frozen=True)
class Trajectory:
    """Tagged family of motion models, the r(t) of every formula.

    Use the classmethod constructors; the flat field layout exists so the
    type stays a single immutable value.
    """

    kind: str
    position0: Vec3 | None = None            # static, uniform
    velocity0: Vec3 | None = None            # uniform
    axis: Vec3 | None = None                 # linear_accel: unit direction
    r0: float = 0.0                          # linear_accel: distance at t=0, m
    v0: float = 0.0                          # linear_accel: signed speed, m/s
    accel: float = 0.0                       # linear_accel: signed accel, m/s^2
    center: Vec3 | None = None               # circular
    radius: float = 0.0                      # circular, m
    omega: float = 0.0                       # circular, rad/s
    phase0: float = 0.0                      # circular, rad
    samples: tuple[tuple[float, Vec3], ...] | None = None  # sampled

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError("unknown trajectory kind %r" % (self.kind,))
        if self.kind == "circular" and self.radius <= 0.0:
            raise DomainError("circular trajectory needs radius > 0")
        if self.kind == "sampled":
            ts = [t for t, _ in self.samples or ()]
            if len(ts) < 2:
                raise DomainError("sampled trajectory needs at least 2 points")
            if any(b <= a for a, b in zip(ts, ts[1:])):
                raise DomainError("sampled times must be strictly increasing")
            pts = np.array([p.as_tuple() for _, p in self.samples])
            bc = "not-a-knot" if len(ts) >= 4 else "natural"
            spline = CubicSpline(np.array(ts), pts, bc_type=bc)
            object.__setattr__(self, "_spline", spline)
            object.__setattr__(self, "_dspline", spline.derivative())

    @classmethod
    def static(cls, position: Vec3) -> "Trajectory":
        return cls(kind="static", position0=position)

    @classmethod
    def uniform(cls, position0: Vec3, velocity: Vec3) -> "Trajectory":
        return cls(kind="uniform", position0=position0, velocity0=velocity)

    @classmethod
    def linear_accel(
        cls, axis: Vec3, r0: float, v0: float, accel: float
    ) -> "Trajectory":
        """Straight-line motion r(t) = r0 + v0 t + accel t^2 / 2 along axis."""
        return cls(kind="linear_accel", axis=axis.unit(), r0=r0, v0=v0, accel=accel)

    @classmethod
    def circular(
        cls, center: Vec3, radius: float, omega: float, phase0: float = 0.0
    ) -> "Trajectory":
        """Circle of given radius in the z=0 plane about center."""
        return cls(
            kind="circular", center=center, radius=radius, omega=omega, phase0=phase0
        )

    @classmethod
    def sampled(cls, points: Sequence[tuple[float, Vec3]]) -> "Trajectory":
        return cls(kind="sampled", samples=tuple(points))

    def position(self, t: float) -> Vec3:
        if self.kind == "static":
            return self.position0
        if self.kind == "uniform":
            return self.position0 + self.velocity0 * t
        if self.kind == "linear_accel":
            return self.axis * (self.r0 + self.v0 * t + 0.5 * self.accel * t * t)
        if self.kind == "circular":
            ph = self.omega * t + self.phase0
            return self.center + Vec3(
                self.radius * math.cos(ph), self.radius * math.sin(ph), 0.0
            )
        p = self._spline(t)
        return Vec3(float(p[0]), float(p[1]), float(p[2]))

    def velocity(self, t: float) -> Vec3:
        if self.kind == "static":
            return Vec3.zero()
        if self.kind == "uniform":
            return self.velocity0
        if self.kind == "linear_accel":
            return self.axis * (self.v0 + self.accel * t)
        if self.kind == "circular":
            ph = self.omega * t + self.phase0
            s = self.radius * self.omega
            return Vec3(-s * math.sin(ph), s * math.cos(ph), 0.0)
        v = self._dspline(t)
        return Vec3(float(v[0]), float(v[1]), float(v[2]))


# --- Frame rotations ---

_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class FrameRotation:
    """Proper orthonormal 3x3 rotation, stored row-major."""

    rows: tuple[
        tuple[float, float, float],
        tuple[float, float, float],
        tuple[float, float, float],
    ]

    def __post_init__(self) -> None:
        m = np.array(self.rows, dtype=float)
        if m.shape != (3, 3):
            raise DomainError("FrameRotation needs a 3x3 matrix")
        if np.max(np.abs(m @ m.T - np.eye(3))) > _ORTHO_TOL:
            raise DomainError("matrix is not orthonormal to 1e-12")
        if abs(np.linalg.det(m) - 1.0) > 1e-9:
            raise DomainError("matrix determinant is not +1")

    def apply(self, v: Vec3) -> Vec3:
        r = self.rows
        return Vec3(
            r[0][0] * v.x + r[0][1] * v.y + r[0][2] * v.z,
            r[1][0] * v.x + r[1][1] * v.y + r[1][2] * v.z,
            r[2][0] * v.x + r[2][1] * v.y + r[2][2] * v.z,
        )

    def transpose(self) -> "FrameRotation":
        r = self.rows
        return FrameRotation(
            (
                (r[0][0], r[1][0], r[2][0]),
                (r[0][1], r[1][1], r[2][1]),
                (r[0][2], r[1][2], r[2][2]),
            )
        )

    @staticmethod
    def identity() -> "FrameRotation":
        return FrameRotation(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))


def rotation_eci_to_ecef(t: float, earth: EarthModel = EARTH) -> FrameRotation:
    """Rotation taking inertial (ECI) coordinates to Earth-fixed (ECEF).

    t = 0 is the instant the two x-axes align.
    """
    if not math.isfinite(t):
        raise DomainError("time must be finite")
    ang = earth.omega_e * t
    c = math.cos(ang)
    s = math.sin(ang)
    return FrameRotation(((c, s, 0.0), (-s, c, 0.0), (0.0, 0.0, 1.0)))


def rotation_ecef_to_eci(t: float, earth: EarthModel = EARTH) -> FrameRotation:
    """Inverse (transpose) of rotation_eci_to_ecef."""
    return rotation_eci_to_ecef(t, earth).transpose()


# --- Station kinematics ---

def station_velocity_eci(
    v_ecef: Vec3,
    r_ecef: Vec3,
    t: float,
    earth: EarthModel = EARTH,
    relativistic: bool = False,
    c: float = C_LIGHT,
) -> Vec3:
    """Velocity of an Earth-fixed-frame mover as seen in the inertial frame.

    Sum of the rotated ECEF velocity and the rotational carry velocity
    omega x r; with the relativistic flag the sum is scaled by
    1/(1 + beta1*beta2), beta_i being the two contributions' speeds over c.
    """
    if v_ecef.norm() >= c:
        raise DomainError("station speed must be below the wave speed")
    r_ce = rotation_ecef_to_eci(t, earth)
    v_rot = r_ce.apply(v_ecef)
    carried = Vec3(0.0, 0.0, earth.omega_e).cross(r_ce.apply(r_ecef))
    total = v_rot + carried
    if relativistic:
        beta12 = (v_rot.norm() / c) * (carried.norm() / c)
        return total / (1.0 + beta12)
    return total


def station_velocity_ecef(
    v_eci: Vec3, r_ecef: Vec3, t: float, earth: EarthModel = EARTH
) -> Vec3:
    """Invert station_velocity_eci (non-relativistic branch) for v_ecef."""
    r_ce = rotation_ecef_to_eci(t, earth)
    carried = Vec3(0.0, 0.0, earth.omega_e).cross(r_ce.apply(r_ecef))
    return r_ce.transpose().apply(v_eci - carried)


# --- Light-time solving ---

def solve_light_time(
    traj_src: Trajectory,
    traj_obs: Trajectory,
    t_emit: float,
    wave_speed: float,
) -> tuple[float, float]:
    """Arrival time and path length of a wavefront emitted at t_emit.

    Fixed-point iteration on t = t_emit + |obs(t) - src(t_emit)| / wave_speed,
    absolute tolerance 1e-12 s. The iteration contracts whenever the
    observer's recession speed stays below the wave speed.
    """
    if wave_speed <= 0.0:
        raise DomainError("wave speed must be positive")
    src_pos = traj_src.position(t_emit)

    def recession_speed(t: float) -> float:
        sep = traj_obs.position(t) - src_pos
        d = sep.norm()
        if d == 0.0:
            return 0.0
        return traj_obs.velocity(t).dot(sep) / d

    def g(t: float) -> float:
        if recession_speed(t) >= wave_speed:
            raise DomainError(
                "observer recedes at or above the wave speed; no arrival"
            )
        return t_emit + (traj_obs.position(t) - src_pos).norm() / wave_speed

    t_arrive, _ = fixed_point_damped(g, g(t_emit), abs_tol=1e-12, max_iter=100)
    # Newton polish of t - t_emit - d(t)/v_w = 0 down to machine precision
    for _ in range(3):
        resid = t_arrive - t_emit - (traj_obs.position(t_arrive) - src_pos).norm() / wave_speed
        slope = 1.0 - recession_speed(t_arrive) / wave_speed
        step = resid / slope
        t_arrive -= step
        if abs(step) <= 1e-15 * max(1.0, abs(t_arrive)):
            break
    return t_arrive, wave_speed * (t_arrive - t_emit)


# --- Velocity composition and viewing geometry ---

def relativistic_velocity_add(v: float, v2: float, c: float = C_LIGHT) -> float:
    """Relativistic sum of collinear velocities: (v+v2)/(1+v v2/c^2)."""
    if abs(v) >= c or abs(v2) >= c:
        raise DomainError("velocities must be strictly inside (-c, c)")
    return (v + v2) / (1.0 + v * v2 / (c * c))


def elevation_angle(
    t: float,
    earth: EarthModel = EARTH,
    Rs: float = 26_560_000.0,
    hT: float = 0.0,
    omega: float = 2.0 * math.pi / 43_082.0,
) -> float:
    """Elevation of a circular-orbit satellite seen from under its t=0 zenith.

    tan(theta_E) = (Rs cos(omega t) - (R+hT)) / (Rs sin(omega t)); equals
    pi/2 when overhead, negative once the satellite drops below the horizon.
    """
    if Rs <= earth.R + hT:
        raise DomainError("satellite radius must exceed station radius")
    wt = omega * t
    return math.atan2(Rs * math.cos(wt) - (earth.R + hT), Rs * math.sin(wt))
