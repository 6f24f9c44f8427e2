"""Non-relativistic Doppler models for uniform and general motion.

Covers the two-body far-field shift, exact close-zone periods from the
spherical-wavefront geometry, crest-pair timing from explicit
trajectories, distance-history models for arbitrary motion, and the
linear-acceleration and uniform-circular specializations.

Sign conventions, used consistently across this module:

* Far field: each angle is measured between the body's velocity and
  the line from source to observer.  A positive projected observer
  speed (``cos theta_obs > 0``) recedes from the source; a positive
  projected source speed (``cos theta_src > 0``) approaches the
  observer.  Receding motion therefore always lowers ``freq_obs``.
* Close zone, observer moving: ``theta`` is measured at the observer
  between its velocity and the source-to-observer line at the first
  crest arrival; ``theta = 0`` recedes.
* Close zone, source moving: ``theta`` is measured at the source
  between its velocity and the source-to-observer line at the first
  crest emission; ``theta = 0`` approaches.

The close-zone conventions are the ones under which both branches
collapse to the same far-field special cases at ``theta = 0`` and
``theta = pi``; the tests pin each reduction exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import Trajectory, Vec3, solve_light_time
from .errors import DomainError, NumericError, ValidationError
from .numerics import expand_bracket, solve_bracketed

__all__ = [
    "CloseZoneConfig",
    "DopplerSample",
    "circular_doppler",
    "close_zone_period",
    "far_field_shift",
    "general_motion_frequency",
    "linear_accel_doppler",
    "two_event_period",
]

_CIRCULAR_MODES = ("source_on_circle", "observer_on_circle")
_OBSERVER_METHODS = ("exact", "large_R", "small_R")
# End-of-period speed above this fraction of the wave speed voids the
# non-relativistic approximations; flagged, not raised.
_SPEED_WARN_FRACTION = 0.01


# --- Result and configuration types ---


@dataclass(frozen=True)
class DopplerSample:
    """One Doppler measurement: observed period, frequency and shift.

    ``t`` is an emission or reception epoch; which one depends on the
    operation and is documented there.  ``extras`` carries documented
    secondary outputs (approximation formulas, per-period averages) as
    name/value pairs; ``extra()`` looks one up by name.
    """

    t: float  # s
    period_obs: float  # s
    freq_obs: float  # Hz
    shift: float  # Hz, freq_obs - freq_src
    warning: str | None = None
    extras: tuple[tuple[str, float], ...] = ()

    def __post_init__(self) -> None:
        if not (isinstance(self.period_obs, float) and self.period_obs > 0.0):
            raise ValidationError("period_obs must be a positive float")
        if abs(self.freq_obs * self.period_obs - 1.0) > 1e-12:
            raise ValidationError("freq_obs must equal 1/period_obs to 1e-12")

    def extra(self, name: str) -> float:
        for key, value in self.extras:
            if key == name:
                return value
        raise KeyError(name)


@dataclass(frozen=True)
class CloseZoneConfig:
    """Geometry for a single close-zone crest pair.

    ``r1`` is the source-observer distance at the first crest arrival
    when ``mover='observer'`` and at the first crest emission when
    ``mover='source'``; ``theta`` follows the module sign conventions.
    """

    r1: float  # m
    v: float  # m/s
    theta: float  # rad
    T: float  # s
    wave_speed: float  # m/s
    mover: str  # "source" | "observer"

    def __post_init__(self) -> None:
        for name in ("r1", "v", "theta", "T", "wave_speed"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValidationError(f"{name} must be finite, got {value!r}")
        if self.r1 <= 0.0:
            raise ValidationError("r1 must be positive")
        if not 0.0 <= self.theta <= math.pi:
            raise ValidationError("theta must lie in [0, pi]")
        if self.T <= 0.0:
            raise ValidationError("T must be positive")
        if not 0.0 < self.v < self.wave_speed:
            raise ValidationError("need 0 < v < wave_speed")
        if self.mover not in ("source", "observer"):
            raise ValidationError(f"unknown mover {self.mover!r}")


# --- Shared helpers ---


def _sample(
    t: float,
    period_obs: float,
    freq_src: float,
    *,
    warning: str | None = None,
    extras: tuple[tuple[str, float], ...] = (),
) -> DopplerSample:
    if not (period_obs > 0.0 and math.isfinite(period_obs)):
        raise DomainError(f"observed period must be positive, got {period_obs!r}")
    freq_obs = 1.0 / period_obs
    return DopplerSample(t, period_obs, freq_obs, freq_obs - freq_src, warning, extras)


def _distance_of(r_of_t: object) -> Callable[[float], float]:
    if isinstance(r_of_t, Trajectory):
        return lambda t: r_of_t.position(t).norm()
    if callable(r_of_t):
        return r_of_t
    raise ValidationError("r_of_t must be a Trajectory or a callable t -> distance")


def _solve_period_equation(rhs: Callable[[float], float], T: float) -> float:
    """Solve the implicit period equation T' = rhs(T').

    Starts from the bracket [T/2, 2T], widened geometrically when the
    root lies outside, then refines with a safeguarded bracketed solve
    and re-applies the defining map until the residual drops below
    1e-15*T.  The map is a contraction whenever the average line speed
    stays below the wave speed, so the polish terminates quickly.
    """

    tol = 1e-15 * T

    def g(tp: float) -> float:
        return rhs(tp) - tp

    try:
        lo, hi = expand_bracket(g, 0.5 * T, 2.0 * T)
        root = solve_bracketed(g, lo, hi, xtol=tol)
    except NumericError as exc:
        raise NumericError(f"period equation not solvable: {exc}") from exc
    for _ in range(100):
        if abs(g(root)) <= tol:
            return root
        root = rhs(root)
    raise NumericError("period equation did not converge to 1e-15*T residual")


# --- Uniform motion, far field ---


def far_field_shift(
    v_src: float,
    theta_src: float,
    v_obs: float,
    theta_obs: float,
    f: float,
    wave_speed: float,
) -> DopplerSample:
    """Plane-wave two-body Doppler shift for uniform motion.

    Returns a sample stamped at ``t = 0``; the configuration is
    stateless so the epoch carries no information.
    """

    if f <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("f and wave_speed must be positive")
    proj_src = v_src * math.cos(theta_src)
    proj_obs = v_obs * math.cos(theta_obs)
    if abs(proj_src) >= wave_speed:
        raise DomainError("source line-of-sight speed at or above wave speed")
    if abs(proj_obs) >= wave_speed:
        raise DomainError("observer line-of-sight speed at or above wave speed")
    ratio = (1.0 - proj_obs / wave_speed) / (1.0 - proj_src / wave_speed)
    return _sample(0.0, 1.0 / (f * ratio), f)


# --- Uniform motion, close zone ---


def close_zone_period(cfg: CloseZoneConfig) -> DopplerSample:
    """Exact spherical-wavefront period for one crest pair.

    The sample is stamped at the epoch that anchors ``r1``: first
    arrival for ``mover='observer'``, first emission for
    ``mover='source'``.  Secondary output ``freq_ratio_approx`` is the
    first-order ratio f'/f evaluated with the exact period; for the
    source branch its validity needs wave_speed >> f*r1 >> v.
    """

    c = cfg.wave_speed
    v = cfg.v
    r1 = cfg.r1
    cos_t = math.cos(cfg.theta)
    sin_t = math.sin(cfg.theta)

    if cfg.mover == "observer":
        lam = c * cfg.T
        a0 = c * c - v * v
        a1 = -2.0 * (c * lam - c * r1 + v * r1 * cos_t)
        a2 = lam * lam - 2.0 * lam * r1
        disc = a1 * a1 - 4.0 * a0 * a2
        if disc < 0.0:
            raise NumericError("close-zone quadratic has no real root")
        # Physical root is always the larger one (the other one solves the
        # negative branch of the squared radical).  Evaluate it without
        # subtracting nearly equal terms, which matters once r1 >> c*T.
        q = -0.5 * (a1 + math.copysign(math.sqrt(disc), a1))
        if a1 > 0.0:
            period = a2 / q if q != 0.0 else 0.0
        else:
            period = q / a0
        if period <= 0.0:
            raise DomainError("close-zone root not positive")
        approx = 1.0 - (v * v * period + r1 * v * cos_t) / (c * (r1 + v * period))
        return _sample(0.0, period, 1.0 / cfg.T, extras=(("freq_ratio_approx", approx),))

    # Source branch: hypot keeps the cosine-rule radicand exact, and the
    # ratio form of r2 - r1 avoids differencing when v*T << r1.
    dl = v * cfg.T
    r2 = math.hypot(r1 - dl * cos_t, dl * sin_t)
    dr = dl * (dl - 2.0 * r1 * cos_t) / (r1 + r2)
    period = cfg.T + dr / c
    approx = 1.0 / (1.0 + math.hypot(v - r1 / cfg.T * cos_t, r1 / cfg.T * sin_t) / c)
    return _sample(0.0, period, 1.0 / cfg.T, extras=(("freq_ratio_approx", approx),))


# --- Crest pairs from explicit trajectories ---


def two_event_period(
    traj_src: Trajectory,
    traj_obs: Trajectory,
    t0: float,
    T: float,
    wave_speed: float,
) -> DopplerSample:
    """Observed period from two crest emissions at t0 and t0 + T.

    Each arrival comes from the shared light-time solver; the second
    arrival therefore depends on its own epoch, which makes the period
    self-consistent.  The sample is stamped at the first arrival.
    """

    if T <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("T and wave_speed must be positive")
    t1_arr, _ = solve_light_time(traj_src, traj_obs, t0, wave_speed)
    t2_arr, _ = solve_light_time(traj_src, traj_obs, t0 + T, wave_speed)
    period = t2_arr - t1_arr
    if period <= 0.0:
        raise NumericError("crest arrivals out of order")
    return _sample(t1_arr, period, 1.0 / T)


# --- General motion from a distance history ---


def general_motion_frequency(
    r_of_t: Trajectory | Callable[[float], float],
    mode: str,
    t: float,
    T: float,
    f: float,
    wave_speed: float,
    r_obs_of_t: Trajectory | Callable[[float], float] | None = None,
) -> DopplerSample:
    """Doppler from a scalar distance history r(t).

    ``r_of_t`` is the moving body's distance from the static party (a
    Trajectory is reduced to the norm of its position).  Modes:

    * ``source_moving``: ``t`` is the first emission epoch; the period
      follows directly from the distance change over one source period.
    * ``observer_moving``: ``t`` is the first reception epoch; the
      period equation is implicit because the observer keeps moving
      while the second crest travels, and is solved to 1e-15*T.
    * ``both``: ``r_of_t`` is the source's distance from a fixed
      reference point on the line of sight and ``r_obs_of_t`` (required)
      is the observer's distance on the other side; ``t`` is the first
      emission epoch and the first reception epoch is approximated as
      ``t + (r(t) + r_obs(t))/wave_speed``.

    Extras: ``v_line_avg`` (per-period average line speed, receding
    positive); for ``both`` the source and observer averages are
    ``v_line_avg_src`` / ``v_line_avg_obs``.
    """

    if T <= 0.0 or f <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("T, f and wave_speed must be positive")
    dist = _distance_of(r_of_t)
    c = wave_speed

    if mode == "source_moving":
        d1 = dist(t)
        d2 = dist(t + T)
        _require_nonneg(d1, d2)
        period = T + (d2 - d1) / c
        v_bar = (d2 - d1) / T
        return _sample(t, period, f, extras=(("v_line_avg", v_bar),))

    if mode == "observer_moving":
        d1 = dist(t)
        _require_nonneg(d1)

        def rhs(tp: float) -> float:
            return T + (dist(t + tp) - d1) / c

        period = _solve_period_equation(rhs, T)
        _require_nonneg(dist(t + period))
        v_bar = (dist(t + period) - d1) / period
        return _sample(t, period, f, extras=(("v_line_avg", v_bar),))

    if mode == "both":
        if r_obs_of_t is None:
            raise ValidationError("mode 'both' requires r_obs_of_t")
        dist_obs = _distance_of(r_obs_of_t)
        d1 = dist(t)
        d2 = dist(t + T)
        o1_epoch = t + (d1 + dist_obs(t)) / c
        o1 = dist_obs(o1_epoch)
        _require_nonneg(d1, d2, o1)

        def rhs(tp: float) -> float:
            return T + (d2 - d1) / c + (dist_obs(o1_epoch + tp) - o1) / c

        period = _solve_period_equation(rhs, T)
        v_src = (d2 - d1) / T
        v_obs = (dist_obs(o1_epoch + period) - o1) / period
        extras = (("v_line_avg_src", v_src), ("v_line_avg_obs", v_obs))
        return _sample(t, period, f, extras=extras)

    raise ValidationError(f"unknown mode {mode!r}")


def _require_nonneg(*distances: float) -> None:
    for d in distances:
        if d < 0.0:
            raise DomainError("distance history went negative")


# --- Linear acceleration along the line of sight ---


def linear_accel_doppler(
    r0: float,
    v0: float,
    a: float,
    t: float,
    T: float,
    f: float,
    wave_speed: float,
) -> DopplerSample:
    """Doppler for 1-D uniformly accelerated motion past a static party.

    The mover starts a distance ``r0`` before the static party, at
    position x(t) = -r0 + v0*t + a*t^2/2 on the line of sight, and the
    branch (approaching, receding, or passing through between the two
    emissions) is selected from the signs of x(t) and x(t+T).  ``t`` is
    the first emission epoch.

    Extras: ``fd_accel_only`` is the acceleration-only shift magnitude
    f*sqrt(a*H/2)/c with H = a*T^2/2 (the t=0, v0=0 contribution);
    ``fd_taylor`` (absent on the pass-through branch) is the first-order
    shift ±f*(v0 + a*t + sqrt(a*H/2))/c, positive on the approaching
    side.  Both are computed directly, so they stay meaningful even
    when the shift itself is below float resolution.
    """

    if T <= 0.0 or f <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("T, f and wave_speed must be positive")
    c = wave_speed
    x1 = -r0 + v0 * t + 0.5 * a * t * t
    tT = t + T
    x2 = -r0 + v0 * tT + 0.5 * a * tT * tT

    # Branch closed forms; each equals T + (|x2| - |x1|)/c exactly but
    # avoids differencing positions, which matters at tiny a*T^2.
    sign: float | None
    if x1 < 0.0 and x2 <= 0.0:
        period = (T / c) * (c - v0 - a * t - 0.5 * a * T)
        sign = 1.0
    elif x1 >= 0.0 and x2 >= 0.0:
        period = (T / c) * (c + v0 + a * t + 0.5 * a * T)
        sign = -1.0
    elif x1 < 0.0 < x2:
        period = (
            c * T - 2.0 * r0 + 2.0 * v0 * t + v0 * T + a * t * t + a * T * t + 0.5 * a * T * T
        ) / c
        sign = None
    else:  # x1 > 0 > x2: passing back through the static party
        period = T + (abs(x2) - abs(x1)) / c
        sign = None

    accel_term = abs(a) * T / 2.0  # sqrt(a*H/2) with H = a*T^2/2
    extras: list[tuple[str, float]] = [("fd_accel_only", f * accel_term / c)]
    if sign is not None:
        extras.insert(0, ("fd_taylor", sign * f * (v0 + a * t + accel_term) / c))
    warning = None
    end_speed = v0 + a * t + a * T
    if abs(end_speed) >= _SPEED_WARN_FRACTION * c:
        warning = (
            f"end-of-period speed {end_speed:.6g} m/s exceeds "
            f"{_SPEED_WARN_FRACTION:.0%} of the wave speed; "
            "non-relativistic closed forms lose validity"
        )
    return _sample(t, period, f, warning=warning, extras=tuple(extras))


# --- Uniform circular motion ---


def _circle_distance(R: float, r0: float, omega: float) -> Callable[[float], float]:
    # Mover on a circle of radius R about the origin, starting on the
    # positive x-axis; static party at (-r0, 0).
    def dist(t: float) -> float:
        angle = omega * t
        return math.hypot(R * math.cos(angle) + r0, R * math.sin(angle))

    return dist


def circular_doppler(
    R: float,
    r0: float,
    omega: float,
    t: float,
    T: float,
    f: float,
    wave_speed: float,
    mode: str = "source_on_circle",
    observer_method: str = "exact",
) -> DopplerSample:
    """Doppler for uniform circular motion in the static party's plane.

    One body moves on a circle of radius ``R`` (angular rate ``omega``,
    on the positive x-axis at t=0); the other sits in the orbit plane a
    distance ``r0`` from the center, on the opposite side.  ``r0 = 0``
    puts the static party at the center, where the shift vanishes.

    ``mode='source_on_circle'``: ``t`` is the first emission epoch and
    the closed-form period follows from the distance change over one
    period.  ``mode='observer_on_circle'`` solves the implicit period
    equation; ``observer_method`` selects how:

    * ``exact``: first reception epoch solved from the light-time
      equation, then the period equation to a 1e-15*T residual; the
      sample is stamped at that reception epoch.
    * ``large_R``: reuses the source-mode closed form, delayed by the
      one-way travel time (accurate when R dwarfs the wavelength and
      the per-period motion); stamped at t + r(t)/wave_speed.
    * ``small_R``: neglects the travel time (t' ~ t), keeping the
      period equation implicit; stamped at t.
    """

    if R <= 0.0 or r0 < 0.0:
        raise ValidationError("need R > 0 and r0 >= 0")
    if T <= 0.0 or f <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("T, f and wave_speed must be positive")
    if mode not in _CIRCULAR_MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    dist = _circle_distance(R, r0, omega)
    c = wave_speed

    if mode == "source_on_circle":
        period = T + (dist(t + T) - dist(t)) / c
        return _sample(t, period, f)

    if observer_method not in _OBSERVER_METHODS:
        raise ValidationError(f"unknown observer_method {observer_method!r}")
    if abs(R * omega) >= c:
        raise DomainError("circling observer at or above wave speed")

    if observer_method == "large_R":
        period = T + (dist(t + T) - dist(t)) / c
        return _sample(t + dist(t) / c, period, f)

    if observer_method == "small_R":
        def rhs_small(tp: float) -> float:
            return T + (dist(t + tp) - dist(t)) / c

        period = _solve_period_equation(rhs_small, T)
        return _sample(t, period, f)

    # Exact: reception epoch from the light-time solve, then the
    # implicit period equation at that epoch.
    src = Trajectory.static(Vec3(-r0, 0.0, 0.0))
    obs = Trajectory.circular(Vec3.zero(), R, omega)
    t_recv, _ = solve_light_time(src, obs, t, c)
    d1 = dist(t_recv)

    def rhs(tp: float) -> float:
        return T + (dist(t_recv + tp) - d1) / c

    period = _solve_period_equation(rhs, T)
    return _sample(t_recv, period, f)
