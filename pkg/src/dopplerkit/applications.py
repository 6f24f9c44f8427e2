"""Applied Doppler pipelines: ground sensing links and satellite navigation.

Sensing side: the reflection (scenario A) and diffraction (scenario B)
shifts of a bistatic ground link watching a moving target, their
monostatic specialization, and the inverse problem of recovering target
speed and heading from a measured shift pair.

Navigation side: the per-crest Doppler budget of a satellite-to-station
link in the inertial frame.  Two wave crests leave the satellite one
spacing T_c apart and are chased to the station through the light-time
solve, each along its own slant path with the refracting atmosphere
riding on it.  The received period then splits into a kinematic
finite-difference term, gravitational and special-relativistic scale
terms, tropospheric and ionospheric interference, and the mean-velocity
remainder that carries the receiver's motion while the signal is in
flight.  A dual-frequency combiner cancels the first-order ionospheric
part.

T_c acts as the crest spacing.  At literal carrier periods the
slant-length change between crests drowns in float rounding (nanometers
against a 1e-9-relative resolution on a megameter path), so budgets
are meant to be evaluated with spacings in the millisecond-to-second
range, where the same first-order arithmetic holds and the differences
resolve cleanly.

Atmospheric profiles are treated as frozen fields over a crest pair:
the scenario carries time-invariant profiles, so n(p, t) = n(p, t0)
holds exactly rather than approximately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .atmosphere import (
    IonoProfile,
    KAPPA_IONO,
    TropoProfile,
    profile_Ne,
    tropo_doppler,
    tropo_ftheta,
)
from .core import (
    C_LIGHT,
    EARTH,
    EarthModel,
    Trajectory,
    Vec3,
    rotation_ecef_to_eci,
    solve_light_time,
    station_velocity_eci,
)
from .errors import DomainError, NumericError, ValidationError
from .gravity_accel import PotentialSpec
from .numerics import adaptive_simpson

__all__ = [
    "DopplerBudget",
    "IONO_TOP_ALTITUDE",
    "SatNavScenario",
    "SensingGeometry",
    "bistatic_doppler",
    "dual_frequency_combine",
    "invert_target_velocity",
    "satnav_doppler_budget",
    "satnav_interference_terms",
    "satnav_period_ratio",
]

# --- Constants ---

# m; slant electron columns stop here.  A Chapman layer peaked near
# 300 km is below 1e-9 of its peak density at this altitude.
IONO_TOP_ALTITUDE = 3_000_000.0

_SCENARIOS = ("reflectA", "diffractB", "monostatic")

_ELEVATION_STEP = 0.5  # s; central-difference step for d(theta_E)/dt

# rad; Newton restart headings, offset so no seed sits on a symmetry axis
_THETA_SEEDS = tuple(0.1 + 0.25 * math.pi * k for k in range(8))


# --- Domain types ---


@dataclass(frozen=True)
class SensingGeometry:
    """Angles and carrier of a transmitter/target/sensor ground link.

    thetaT is the angle between the target velocity and the
    transmitter-to-target line.  alpha is the reflection half-angle of
    sensor A (transmitter-side specular geometry); beta is the
    diffraction angle toward sensor B.  Angles in radians, [0, pi).
    """

    alpha: float
    beta: float
    thetaT: float
    f: float  # Hz

    def __post_init__(self) -> None:
        for name, ang in (
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("thetaT", self.thetaT),
        ):
            if not math.isfinite(ang) or not 0.0 <= ang < math.pi:
                raise ValidationError("%s must lie in [0, pi)" % name)
        if not math.isfinite(self.f) or self.f <= 0.0:
            raise ValidationError("carrier frequency must be positive")


@dataclass(frozen=True)
class SatNavScenario:
    """Circular-orbit satellite plus an Earth-fixed sensing station.

    The satellite trajectory lives in the inertial frame and must be a
    geocentric circle above the surface.  The station is given by its
    ECEF position and velocity at t = 0 and rides Earth rotation from
    there.  f1 is the carrier every budget quantity is evaluated at;
    f2 exists for the dual-frequency combination.  iono and tropo
    switch the two atmospheric layers on; None means vacuum.  Slant
    columns need profiles that die off upward, so the unbounded
    flat_linear ionosphere and the height-free measured troposphere
    are rejected.
    """

    satellite: Trajectory
    r_station: Vec3  # m, ECEF at t = 0
    v_station: Vec3  # m/s, ECEF
    f1: float  # Hz
    f2: float  # Hz
    earth: EarthModel = EARTH
    iono: IonoProfile | None = None
    tropo: TropoProfile | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.satellite, Trajectory) or self.satellite.kind != "circular":
            raise ValidationError("satellite must be a circular Trajectory")
        if self.satellite.center is None or self.satellite.center.norm() != 0.0:
            raise ValidationError("orbit must be geocentric (center at the ECI origin)")
        if self.satellite.radius <= self.earth.R:
            raise ValidationError("orbit radius must exceed earth.R")
        for label, f in (("f1", self.f1), ("f2", self.f2)):
            if not math.isfinite(f) or f <= 0.0:
                raise ValidationError("%s must be positive" % label)
        if self.f1 == self.f2:
            raise ValidationError("f1 and f2 must differ")
        for label, vec in (("r_station", self.r_station), ("v_station", self.v_station)):
            if not isinstance(vec, Vec3):
                raise ValidationError("%s must be a Vec3" % label)
        if self.r_station.norm() == 0.0:
            raise ValidationError("station cannot sit at the geocenter")
        if self.r_station.norm() > self.satellite.radius:
            raise ValidationError("station cannot sit outside the orbit radius")
        if self.iono is not None:
            if not isinstance(self.iono, IonoProfile):
                raise ValidationError("iono must be an IonoProfile or None")
            if self.iono.model == "flat_linear":
                raise ValidationError(
                    "flat_linear density grows without bound; a satellite column "
                    "needs a decaying profile (exponential or chapman)"
                )
        if self.tropo is not None:
            if not isinstance(self.tropo, TropoProfile):
                raise ValidationError("tropo must be a TropoProfile or None")
            if self.tropo.model == "measured":
                raise ValidationError(
                    "measured troposphere carries no height dependence; "
                    "build a quadratic or quartic profile"
                )


@dataclass(frozen=True)
class DopplerBudget:
    """Doppler split of one crest pair, every field in Hz.

    kinematic is the finite-difference slant term, I_G and I_S the
    gravitational and special-relativistic scale terms, I_T and I_I
    the tropospheric and ionospheric interference.  total is the sum
    of those five.  sagnac re-expresses kinematic against the
    mean-velocity Doppler (kinematic = mean-velocity value + sagnac);
    it annotates the split and is not a sixth addend, which would
    count the slant geometry twice.
    """

    kinematic: float
    I_G: float
    I_S: float
    I_T: float
    I_I: float
    sagnac: float
    total: float

    def __post_init__(self) -> None:
        parts = self.kinematic + self.I_G + self.I_S + self.I_T + self.I_I
        if not abs(self.total - parts) <= 1e-9:
            raise ValidationError("total drifted from the sum of its parts")


# --- Ground sensing links ---


def bistatic_doppler(
    geom: SensingGeometry, speed: float, scenario: str, c: float = C_LIGHT
) -> float:
    """Shift on a ground link whose target moves at the given speed.

    reflectA bounces the carrier off the target into a sensor at
    reflection half-angle alpha; diffractB forward-scatters toward a
    sensor at diffraction angle beta; monostatic co-locates sensor and
    transmitter.  The two legs add:

        reflectA    -f v [cos(thetaT) + cos(2 alpha + thetaT)] / c
        diffractB   -f v [cos(thetaT) + cos(beta - thetaT)] / c
        monostatic  -2 f v cos(thetaT) / c

    The relativistic corrections of the two legs carry opposite signs
    and cancel, so the classical forms hold through first order.
    """
    if not isinstance(geom, SensingGeometry):
        raise ValidationError("geom must be a SensingGeometry")
    if scenario not in _SCENARIOS:
        raise ValidationError(
            "unknown scenario %r; expected one of %s" % (scenario, ", ".join(_SCENARIOS))
        )
    if not math.isfinite(c) or c <= 0.0:
        raise ValidationError("wave speed must be positive")
    if not math.isfinite(speed) or not 0.0 <= speed < c:
        raise ValidationError("target speed must lie in [0, c)")
    base = -geom.f * speed / c
    if scenario == "reflectA":
        return base * (math.cos(geom.thetaT) + math.cos(2.0 * geom.alpha + geom.thetaT))
    if scenario == "diffractB":
        return base * (math.cos(geom.thetaT) + math.cos(geom.beta - geom.thetaT))
    return 2.0 * base * math.cos(geom.thetaT)


def _sensing_pair(v: float, theta: float, alpha: float, beta: float, k: float) -> tuple[float, float]:
    # forward model of both sensors; k = -f/c
    fa = k * v * (math.cos(theta) + math.cos(2.0 * alpha + theta))
    fb = k * v * (math.cos(theta) + math.cos(beta - theta))
    return fa, fb


def invert_target_velocity(
    fD_A: float,
    fD_B: float,
    alpha: float,
    beta: float,
    f: float,
    c: float = C_LIGHT,
) -> tuple[float, float]:
    """Recover (speed, thetaT) from a reflectA / diffractB shift pair.

    2D Newton iteration on the forward pair with the analytic
    Jacobian, restarted over a deterministic heading grid.  The
    Jacobian determinant is (f^2 v / c^2) 4 cos(alpha) cos(beta/2)
    sin(alpha + beta/2), so the geometry degenerates when alpha =
    pi/2, beta = pi, or alpha + beta/2 hits 0 or pi: both sensors then
    read the same velocity projection and no shift pair separates
    speed from heading.  Two zero shifts mean a target at rest, whose
    heading is undefined; it comes back as nan.  The returned heading
    lies in [0, 2 pi) with speed >= 0.
    """
    for label, val in (("fD_A", fD_A), ("fD_B", fD_B)):
        if not math.isfinite(val):
            raise ValidationError("%s must be finite" % label)
    for label, ang in (("alpha", alpha), ("beta", beta)):
        if not math.isfinite(ang) or not 0.0 <= ang < math.pi:
            raise ValidationError("%s must lie in [0, pi)" % label)
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("carrier frequency must be positive")
    if not math.isfinite(c) or c <= 0.0:
        raise ValidationError("wave speed must be positive")
    geom_det = math.cos(alpha) * math.cos(0.5 * beta) * math.sin(alpha + 0.5 * beta)
    if abs(geom_det) < 1e-9:
        raise NumericError(
            "sensing geometry is singular: cos(alpha) cos(beta/2) "
            "sin(alpha + beta/2) = %.3e; the two shifts are not independent" % geom_det
        )
    if fD_A == 0.0 and fD_B == 0.0:
        return 0.0, math.nan

    k = -f / c
    scale = max(abs(fD_A), abs(fD_B))
    tol = 1e-12 * scale
    v_seed = scale * c / (2.0 * f)  # |f_D| <= 2 f v / c bounds the speed from below
    for theta0 in _THETA_SEEDS:
        v, theta = v_seed, theta0
        for _ in range(60):
            fa, fb = _sensing_pair(v, theta, alpha, beta, k)
            ra, rb = fa - fD_A, fb - fD_B
            if max(abs(ra), abs(rb)) <= tol:
                break
            j11 = k * (math.cos(theta) + math.cos(2.0 * alpha + theta))
            j12 = -k * v * (math.sin(theta) + math.sin(2.0 * alpha + theta))
            j21 = k * (math.cos(theta) + math.cos(beta - theta))
            j22 = -k * v * (math.sin(theta) - math.sin(beta - theta))
            det = j11 * j22 - j12 * j21
            if abs(det) < 1e-300:
                break  # passed through v = 0; restart elsewhere
            v -= (ra * j22 - rb * j12) / det
            theta -= (rb * j11 - ra * j21) / det
        else:
            continue
        fa, fb = _sensing_pair(v, theta, alpha, beta, k)
        if max(abs(fa - fD_A), abs(fb - fD_B)) > max(tol, 1e-9):
            continue
        if v < 0.0:
            v, theta = -v, theta + math.pi
        return v, theta % (2.0 * math.pi)
    raise NumericError(
        "target-velocity inversion did not converge from any heading seed; "
        "shifts (%g, %g) Hz may be inconsistent with the geometry" % (fD_A, fD_B)
    )


# --- Satellite navigation: scenario kinematics ---


@dataclass(frozen=True)
class _StationEci:
    """Inertial-frame view of the Earth-fixed station.

    Quacks like a Trajectory for the light-time solver: position and
    velocity only.  With omega_e = 0 the rotation is the exact
    identity, so a static station reproduces Trajectory.static floats
    bit for bit.
    """

    r0: Vec3
    v0: Vec3
    earth: EarthModel

    def position(self, t: float) -> Vec3:
        return rotation_ecef_to_eci(t, self.earth).apply(self.r0 + self.v0 * t)

    def velocity(self, t: float) -> Vec3:
        return station_velocity_eci(self.v0, self.r0 + self.v0 * t, t, self.earth)


def _check_scenario(scn: SatNavScenario) -> None:
    if not isinstance(scn, SatNavScenario):
        raise ValidationError("scn must be a SatNavScenario")


def _check_epoch(t0: float, T_c: float, c: float) -> None:
    if not math.isfinite(t0):
        raise ValidationError("t0 must be finite")
    if not math.isfinite(T_c) or T_c <= 0.0:
        raise ValidationError("crest spacing T_c must be positive")
    if not math.isfinite(c) or c <= 0.0:
        raise ValidationError("wave speed must be positive")


def satnav_interference_terms(
    scn: SatNavScenario, t: float, c: float = C_LIGHT
) -> tuple[float, float]:
    """Dimensionless gravitational and special-relativistic scale terms.

    I_G = (Phi(r_s) - Phi(r_o)) / c^2 compares the Newtonian
    potentials of the two ends; a satellite above the station has the
    shallower potential, so I_G > 0 and the station reads the carrier
    blueshifted.  I_S = (|v_o|^2 - |v_s|^2) / (2 c^2) compares
    inertial-frame speeds, the station velocity assembled via
    station_velocity_eci.  Scaled by the carrier they enter the budget
    as f I_G and f I_S.
    """
    _check_scenario(scn)
    if not math.isfinite(t):
        raise ValidationError("time must be finite")
    if not math.isfinite(c) or c <= 0.0:
        raise ValidationError("wave speed must be positive")
    r_ecef = scn.r_station + scn.v_station * t
    phi = PotentialSpec(GM=scn.earth.GM)
    r_s = scn.satellite.position(t).norm()
    r_o = r_ecef.norm()  # rotation preserves the radius
    I_G = (phi.potential_at(r_s) - phi.potential_at(r_o)) / (c * c)
    v_o = station_velocity_eci(scn.v_station, r_ecef, t, scn.earth)
    v_s = scn.satellite.velocity(t)
    I_S = (v_o.dot(v_o) - v_s.dot(v_s)) / (2.0 * c * c)
    return I_G, I_S


# --- Satellite navigation: slant-path atmosphere ---


def _tropo_terms(
    profile: TropoProfile, earth: EarthModel
) -> tuple[tuple[float, float, float, int], ...]:
    # (N at the anchor, ceiling radius, thickness, power) per component
    if profile.model == "quadratic":
        return ((profile.N_T, earth.R + profile.h0, profile.h0 - profile.hT, 2),)
    return (
        (profile.N_Td, earth.R + profile.h0d, profile.h0d - profile.hT, 4),
        (profile.N_Tw, earth.R + profile.h0w, profile.h0w - profile.hT, 4),
    )


def _slant_integral(g, r_lo: float, r_hi: float, b2: float) -> float:
    # line integral along a straight slant by radius substitution:
    # dp = r dr / sqrt(r^2 - b^2), with b the impact parameter
    if r_hi <= r_lo:
        return 0.0

    def integrand(r: float) -> float:
        return g(r) * r / math.sqrt(r * r - b2)

    return adaptive_simpson(integrand, r_lo, r_hi, rel_tol=1e-12)


def _atmo_excess(
    scn: SatNavScenario, f: float, r_s: Vec3, r_o: Vec3
) -> tuple[float, float, float]:
    """Excess path of the straight slant from station r_o to satellite r_s.

    Returns (tropo excess m, iono excess m, slant electron column
    el/m^2).  The ionospheric index is the first-order form
    n - 1 = -KAPPA_IONO Ne / (2 f^2), so its excess is negative.
    """
    los = r_s - r_o
    d = los.norm()
    r_lo = r_o.norm()
    sin_el = r_o.dot(los) / (r_lo * d)
    if sin_el <= 0.0:
        raise DomainError(
            "satellite below the station horizon; the slant-path "
            "atmosphere model needs a positive elevation"
        )
    r_lo = max(r_lo, scn.earth.R)  # profiles are defined from the surface up
    b2 = r_lo * r_lo * (1.0 - sin_el * sin_el)
    r_top = r_s.norm()
    exc_t = 0.0
    if scn.tropo is not None:
        for N_x, r_ceil, thickness, power in _tropo_terms(scn.tropo, scn.earth):
            hi = min(r_ceil, r_top)

            def n_units(r: float, N_x=N_x, r_ceil=r_ceil, thickness=thickness, power=power) -> float:
                return N_x * ((r_ceil - r) / thickness) ** power

            exc_t += 1e-6 * _slant_integral(n_units, r_lo, hi, b2)
    stec = 0.0
    if scn.iono is not None:
        lo = r_lo
        if scn.iono.model == "exponential":
            lo = max(lo, scn.earth.R + scn.iono.h0)  # empty below the base
        hi = min(scn.earth.R + IONO_TOP_ALTITUDE, r_top)
        stec = _slant_integral(
            lambda r: profile_Ne(scn.iono, r - scn.earth.R), lo, hi, b2
        )
    exc_i = -KAPPA_IONO / (2.0 * f * f) * stec
    return exc_t, exc_i, stec


def _crest(
    scn: SatNavScenario, obs: _StationEci, t_emit: float, f: float, c: float
) -> tuple[float, float, float, float, float]:
    """Chase one crest from the satellite to the station.

    Returns (arrival time, slant length, tropo excess, iono excess,
    slant electron column).  Arrival solves
    t' = t_emit + (d(t') + excess(t')) / c with the slant geometry
    re-evaluated each pass; vacuum scenarios return the light-time
    solution untouched so downstream differences stay bit-stable.
    """
    r_s = scn.satellite.position(t_emit)
    t_arr, d = solve_light_time(scn.satellite, obs, t_emit, c)
    if scn.iono is None and scn.tropo is None:
        # The arrival time is kept untouched so downstream time
        # differences stay bit-stable, but the slant is recomputed
        # geometrically: c (t' - t) quantizes at c ulp(t'), which is a
        # tenth of a millimetre once the epoch reaches a few thousand
        # seconds.
        return t_arr, (obs.position(t_arr) - r_s).norm(), 0.0, 0.0, 0.0
    exc_t = exc_i = stec = 0.0
    for _ in range(8):
        r_o = obs.position(t_arr)
        d = (r_o - r_s).norm()
        exc_t, exc_i, stec = _atmo_excess(scn, f, r_s, r_o)
        t_next = t_emit + (d + exc_t + exc_i) / c
        settled = abs(t_next - t_arr) <= 1e-13 * max(1.0, abs(t_next))
        t_arr = t_next
        if settled:
            return t_arr, d, exc_t, exc_i, stec
    raise NumericError("atmospheric arrival-time iteration did not settle")


def _slant_elevation(r_o: Vec3, r_s: Vec3) -> float:
    # elevation of the o -> s slant above the local horizontal at o
    los = r_s - r_o
    sin_el = r_o.dot(los) / (r_o.norm() * los.norm())
    return math.asin(max(-1.0, min(1.0, sin_el)))


# --- Satellite navigation: crest-pair pipelines ---


def satnav_period_ratio(
    scn: SatNavScenario, t0: float, T_c: float, c: float = C_LIGHT
) -> tuple[float, float, float, float]:
    """Linearized crest-pair period ratio T_c / T'_c and its pieces.

    Crests leave the satellite at t0 and t0 + T_c, each chased to the
    station along its own slant.  Returns (ratio, d1, d2, I_Atmo)
    with

        ratio = 1 - (d2 - d1) / (c T_c) + I_Atmo

    d_i the slant lengths and I_Atmo = -(excess_2 - excess_1)/(c T_c)
    the atmospheric interference, excess_i the integral of n - 1 along
    slant i at the primary carrier f1.  Vacuum scenarios give
    I_Atmo = 0 exactly.
    """
    _check_scenario(scn)
    _check_epoch(t0, T_c, c)
    obs = _StationEci(scn.r_station, scn.v_station, scn.earth)
    _, d1, exc_t1, exc_i1, _ = _crest(scn, obs, t0, scn.f1, c)
    _, d2, exc_t2, exc_i2, _ = _crest(scn, obs, t0 + T_c, scn.f1, c)
    I_atmo = -((exc_t2 + exc_i2) - (exc_t1 + exc_i1)) / (c * T_c)
    ratio = 1.0 - (d2 - d1) / (c * T_c) + I_atmo
    return ratio, d1, d2, I_atmo


def satnav_doppler_budget(
    scn: SatNavScenario, t0: float, T_c: float, c: float = C_LIGHT
) -> DopplerBudget:
    """Split the crest-pair Doppler at the primary carrier into a budget.

    kinematic = -f (d2 - d1) / (c T'_c): the finite-difference slant
    term over the received period T'_c = t'_2 - t'_1, computed as
    -f (delta - excess difference / c) / T'_c with delta = T'_c - T_c
    so that in vacuum it equals f T_c (1/T'_c - 1/T_c), the two-crest
    shift scaled to the carrier, to the last float digit.  I_G and I_S
    scale the interference terms at t0 by f.  I_T follows the stable-
    troposphere derivative form: elevation factor f(theta_E) times the
    elevation rate, central-differenced over +-0.5 s.  I_I is
    KAPPA_IONO (STEC_2 - STEC_1) / (2 f c T_c) from the per-crest
    electron columns.  sagnac = kinematic - mean-velocity Doppler,
    the mean taken over [t0, t'_2] with the line of sight anchored to
    the first slant; it expresses how much of kinematic the receiver's
    flight-time motion contributes and is not added again.

    total = kinematic + I_G + I_S + I_T + I_I.
    """
    _check_scenario(scn)
    _check_epoch(t0, T_c, c)
    f = scn.f1
    obs = _StationEci(scn.r_station, scn.v_station, scn.earth)
    t1_arr, d1, exc_t1, exc_i1, stec1 = _crest(scn, obs, t0, f, c)
    t2_arr, d2, exc_t2, exc_i2, stec2 = _crest(scn, obs, t0 + T_c, f, c)
    T_meas = t2_arr - t1_arr
    if T_meas <= 0.0:
        raise NumericError("received period came out non-positive")
    # (d2 - d1)/c re-expressed through the arrival times: exact in
    # vacuum, and free of the megameter-scale cancellation in d_i
    delta_slant = (T_meas - T_c) - ((exc_t2 + exc_i2) - (exc_t1 + exc_i1)) / c
    kinematic = -f * delta_slant / T_meas

    I_G, I_S = satnav_interference_terms(scn, t0, c)
    I_G_hz = f * I_G
    I_S_hz = f * I_S

    I_T_hz = 0.0
    if scn.tropo is not None:
        theta0 = _slant_elevation(obs.position(t0), scn.satellite.position(t0))
        if theta0 <= 0.0:
            raise DomainError("satellite below the station horizon at t0")
        h = _ELEVATION_STEP
        rate = (
            _slant_elevation(obs.position(t0 + h), scn.satellite.position(t0 + h))
            - _slant_elevation(obs.position(t0 - h), scn.satellite.position(t0 - h))
        ) / (2.0 * h)
        I_T_hz = tropo_doppler(f, tropo_ftheta(scn.tropo, theta0, scn.earth), rate, c)

    I_I_hz = 0.0
    if scn.iono is not None:
        I_I_hz = KAPPA_IONO * (stec2 - stec1) / (2.0 * f * c * T_c)

    span = t2_arr - t0
    v_s_avg = (scn.satellite.position(t2_arr) - scn.satellite.position(t0)) / span
    v_o_avg = (obs.position(t2_arr) - obs.position(t0)) / span
    r_hat = (scn.satellite.position(t0) - obs.position(t1_arr)).unit()
    f_bar = -f * (v_s_avg - v_o_avg).dot(r_hat) / c
    sagnac = kinematic - f_bar

    total = kinematic + I_G_hz + I_S_hz + I_T_hz + I_I_hz
    return DopplerBudget(
        kinematic=kinematic,
        I_G=I_G_hz,
        I_S=I_S_hz,
        I_T=I_T_hz,
        I_I=I_I_hz,
        sagnac=sagnac,
        total=total,
    )


def dual_frequency_combine(fD_f1: float, fD_f2: float, f1: float, f2: float) -> float:
    """Ionosphere-free combination f2 fD_f2 - f1 fD_f1 (units Hz^2).

    A first-order ionospheric term enters the measured shifts as a
    common a / (c f_i); the frequency-weighted difference cancels it
    identically, leaving the weighted kinematic content.
    """
    for label, val in (
        ("fD_f1", fD_f1),
        ("fD_f2", fD_f2),
        ("f1", f1),
        ("f2", f2),
    ):
        if not math.isfinite(val):
            raise ValidationError("%s must be finite" % label)
    if f1 <= 0.0 or f2 <= 0.0:
        raise ValidationError("carriers must be positive")
    if f1 == f2:
        raise ValidationError("dual-frequency combination needs distinct carriers")
    return f2 * fD_f2 - f1 * fD_f1
