"""Relativistic Doppler models: vacuum, media, averaged general motion.

Covers the longitudinal vacuum shift, uniform motion through a wave
medium, general motion via per-period average velocities, relativistic
uniformly accelerated kinematics, circular motion with rotating source
or observer, and wave-speed drag in a flowing medium.

Sign conventions: line velocities are signed with receding positive,
for the source and the observer alike.  A co-moving chase (source
approaching at w, observer receding at w, equal speed magnitudes)
therefore enters as v_src_line = -w, v_obs_line = +w and produces no
shift at all.  Speed magnitudes feed the time-dilation factors and may
exceed |v_line| (transverse motion has v_line = 0 with a nonzero
magnitude).

Two light speeds can appear together: ``medium.wave_speed`` is the
propagation speed c' that the classical crest-timing terms use, while
the invariant speed ``c`` (keyword, default the vacuum value) feeds
every Lorentz factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .classical import DopplerSample, circular_doppler
from .core import C_LIGHT
from .errors import DomainError, ValidationError
from .numerics import adaptive_simpson

__all__ = [
    "MediumSpec",
    "MotionAverages",
    "circular_relativistic",
    "general_motion_shift",
    "longitudinal_shift",
    "medium_uniform_shift",
    "motion_averages_from_history",
    "moving_medium_wave_speed",
    "rel_accel_average_velocity",
    "rel_accel_velocity",
]

_CIRCULAR_REL_MODES = (
    "source_on_circle_axis",
    "observer_on_circle_axis",
    "source_on_circle_in_plane",
    "observer_on_circle_in_plane",
)


# --- Domain types ---


@dataclass(frozen=True)
class MotionAverages:
    """Per-period averaged motion of one body.

    ``v_line`` is the average velocity along the source-observer line,
    signed with receding positive.  ``speed_mag`` is the average speed
    magnitude used for time dilation; it defaults to ``|v_line|``,
    which is only right for purely line-of-sight motion.  Transverse
    or curved motion needs an explicitly supplied magnitude.
    """

    v_line: float  # m/s
    speed_mag: float | None = None  # m/s

    def __post_init__(self) -> None:
        if not (isinstance(self.v_line, (int, float)) and math.isfinite(self.v_line)):
            raise ValidationError(f"v_line must be finite, got {self.v_line!r}")
        if self.speed_mag is None:
            object.__setattr__(self, "speed_mag", abs(self.v_line))
        if not (isinstance(self.speed_mag, (int, float)) and math.isfinite(self.speed_mag)):
            raise ValidationError(f"speed_mag must be finite, got {self.speed_mag!r}")
        if abs(self.v_line) > self.speed_mag:
            raise ValidationError("speed_mag cannot be below |v_line|")
        if not self.speed_mag < C_LIGHT:
            raise ValidationError("speed_mag must stay below the vacuum light speed")

    @classmethod
    def at_rest(cls) -> "MotionAverages":
        return cls(0.0, 0.0)


@dataclass(frozen=True)
class MediumSpec:
    """Wave medium: propagation speed or refractive index, plus flow.

    Exactly one of ``wave_speed`` (c') and ``refractive_index`` (n)
    must be given; the other is derived through n = c/c' with the
    vacuum light speed.  ``flow_speed`` is the medium's own speed
    along the source-observer line, positive when the medium streams
    from the observer toward the source (against the propagation).
    """

    wave_speed: float | None = None  # m/s
    refractive_index: float | None = None
    flow_speed: float = 0.0  # m/s

    def __post_init__(self) -> None:
        if (self.wave_speed is None) == (self.refractive_index is None):
            raise ValidationError("give exactly one of wave_speed and refractive_index")
        if self.wave_speed is None:
            n = self.refractive_index
            if not (isinstance(n, (int, float)) and math.isfinite(n) and n >= 1.0):
                raise ValidationError(f"refractive_index must be >= 1, got {n!r}")
            object.__setattr__(self, "wave_speed", C_LIGHT / n)
        else:
            cp = self.wave_speed
            if not (isinstance(cp, (int, float)) and 0.0 < cp <= C_LIGHT):
                raise ValidationError(f"wave_speed must lie in (0, c], got {cp!r}")
            object.__setattr__(self, "refractive_index", C_LIGHT / cp)
        if not (math.isfinite(self.flow_speed) and abs(self.flow_speed) < C_LIGHT):
            raise ValidationError("flow_speed magnitude must stay below c")

    @classmethod
    def vacuum(cls) -> "MediumSpec":
        return cls(wave_speed=C_LIGHT)


# --- Shared core ---


def _check_speeds(src: MotionAverages, obs: MotionAverages, cprime: float, c: float) -> None:
    if cprime <= 0.0 or not math.isfinite(cprime):
        raise DomainError(f"wave speed must be positive, got {cprime!r}")
    if c <= 0.0:
        raise ValidationError("c must be positive")
    for body, name in ((src, "source"), (obs, "observer")):
        if body.speed_mag >= c:
            raise DomainError(f"{name} speed magnitude at or above c")
        if abs(body.v_line) >= cprime:
            raise DomainError(f"{name} line speed at or above the medium wave speed")


def _dilated_ratio(src: MotionAverages, obs: MotionAverages, cprime: float, c: float) -> float:
    # Classical crest timing against c', Lorentz factors against c.
    classical = (1.0 - obs.v_line / cprime) / (1.0 + src.v_line / cprime)
    dilation = math.sqrt(1.0 - (src.speed_mag / c) ** 2) / math.sqrt(
        1.0 - (obs.speed_mag / c) ** 2
    )
    return classical * dilation


# --- Operations ---


def longitudinal_shift(v: float, f: float, c: float = C_LIGHT) -> float:
    """Received frequency for pure line-of-sight vacuum motion.

    ``v`` is the relative speed, receding positive.  The formula is the
    frame-symmetric square root, so swapping emitter and receiver roles
    (negating v) is an exact reciprocal.
    """

    if f <= 0.0 or c <= 0.0:
        raise ValidationError("f and c must be positive")
    if not abs(v) < c:
        raise DomainError("|v| must stay below c")
    return f * math.sqrt((1.0 - v / c) / (1.0 + v / c))


def medium_uniform_shift(
    src: MotionAverages,
    obs: MotionAverages,
    medium: MediumSpec,
    f: float,
    c: float = C_LIGHT,
) -> float:
    """Received frequency for uniform motion through a wave medium.

    Combines the classical crest timing in the medium (both bodies
    projected on the line, wave speed c') with each body's time
    dilation (full speed magnitudes, invariant speed c).  With c' = c
    and purely longitudinal motion this collapses to
    ``longitudinal_shift`` of the relativistically added speeds.
    """

    if f <= 0.0:
        raise ValidationError("f must be positive")
    _check_speeds(src, obs, medium.wave_speed, c)
    return f * _dilated_ratio(src, obs, medium.wave_speed, c)


def general_motion_shift(
    src: MotionAverages,
    obs: MotionAverages,
    medium: MediumSpec,
    f: float,
    c: float = C_LIGHT,
) -> float:
    """Received frequency for arbitrary motion via per-period averages.

    Same combination rule as ``medium_uniform_shift``; the inputs are
    understood as averages over one emission period (line projection)
    and one reception period (dilation), which is accurate while the
    velocities change little over a period.  Build the averages by
    hand or with ``motion_averages_from_history``.
    """

    if f <= 0.0:
        raise ValidationError("f must be positive")
    _check_speeds(src, obs, medium.wave_speed, c)
    return f * _dilated_ratio(src, obs, medium.wave_speed, c)


def motion_averages_from_history(
    line_velocity_of_t: Callable[[float], float],
    t: float,
    T: float,
    c: float = C_LIGHT,
    exact_dilation: bool = False,
) -> MotionAverages:
    """Average a line-velocity history over [t, t+T] into MotionAverages.

    ``v_line`` is the plain velocity average (quadrature, rel. tol
    1e-12).  By default ``speed_mag`` is the average of |v|, the
    near-constant-speed approximation.  ``exact_dilation=True`` instead
    averages the full dilation integrand sqrt(1 - (v/c)^2) and returns
    the effective magnitude that reproduces that exact average through
    the standard shift formulas.
    """

    if T <= 0.0:
        raise ValidationError("T must be positive")
    v_line = adaptive_simpson(line_velocity_of_t, t, t + T, rel_tol=1e-12) / T
    if exact_dilation:
        factor = (
            adaptive_simpson(
                lambda tau: math.sqrt(1.0 - (line_velocity_of_t(tau) / c) ** 2),
                t,
                t + T,
                rel_tol=1e-12,
            )
            / T
        )
        speed = c * math.sqrt(max(0.0, 1.0 - factor * factor))
    else:
        speed = adaptive_simpson(lambda tau: abs(line_velocity_of_t(tau)), t, t + T, rel_tol=1e-12) / T
    # The two averages are equal in exact arithmetic for constant speed;
    # keep the invariant across quadrature rounding.
    return MotionAverages(v_line, max(speed, abs(v_line)))


def rel_accel_velocity(v0: float, a: float, t: float, c: float = C_LIGHT) -> float:
    """Instantaneous velocity under constant proper-frame acceleration.

    v(t) = (v0 + a t)/sqrt(1 + ((v0 + a t)/c)^2), bounded by c for any
    elapsed time.
    """

    if t < 0.0:
        raise ValidationError("t must be nonnegative")
    if not (math.isfinite(a) and math.isfinite(v0)):
        raise ValidationError("v0 and a must be finite")
    x = v0 + a * t
    return x / math.sqrt(1.0 + (x / c) ** 2)


def rel_accel_average_velocity(
    v0: float,
    a: float,
    t: float,
    *,
    period: float | None = None,
    distance: float | None = None,
    c: float = C_LIGHT,
) -> MotionAverages:
    """Average relativistic velocity over one period of accelerated motion.

    Give exactly one averaging window: ``period`` (seconds) or
    ``distance`` (meters, converted through T = sqrt(2 H / a), which
    needs a > 0).  The closed form

        v_bar = (x1 + x2) / (sqrt(1 + (x1/c)^2) + sqrt(1 + (x2/c)^2)),
        x1 = v0 + a t,  x2 = v0 + a (t + T)

    is the exact time average of the instantaneous velocity, written
    without differencing so it survives tiny a*T.  ``speed_mag`` is
    |v_bar|, which undercounts dilation if the velocity reverses sign
    inside the window; supply your own magnitude in that case.
    """

    if t < 0.0:
        raise ValidationError("t must be nonnegative")
    if not (math.isfinite(a) and math.isfinite(v0)):
        raise ValidationError("v0 and a must be finite")
    if (period is None) == (distance is None):
        raise ValidationError("give exactly one of period and distance")
    if distance is not None:
        if a <= 0.0:
            raise DomainError("distance form needs a > 0")
        if distance <= 0.0:
            raise ValidationError("distance must be positive")
        period = math.sqrt(2.0 * distance / a)
    if period is None or period <= 0.0:
        raise ValidationError("period must be positive")
    x1 = v0 + a * t
    x2 = v0 + a * (t + period)
    v_bar = (x1 + x2) / (
        math.sqrt(1.0 + (x1 / c) ** 2) + math.sqrt(1.0 + (x2 / c) ** 2)
    )
    return MotionAverages(v_bar, abs(v_bar))


def circular_relativistic(
    R: float,
    r0: float,
    omega: float,
    t: float,
    T: float,
    f: float,
    medium: MediumSpec,
    mode: str,
    c: float = C_LIGHT,
) -> DopplerSample:
    """Doppler for uniform circular motion with relativistic dilation.

    The rotating body circles at radius ``R`` and rate ``omega``; the
    static party sits on the rotation axis or in the orbit plane a
    distance ``r0`` from the center (same geometry as the classical
    circular operation).  Modes:

    * ``source_on_circle_axis``: constant distance leaves only source
      dilation, f'/f = sqrt(1 - (R omega/c)^2); ``r0`` is ignored.
    * ``observer_on_circle_axis``: exact reciprocal blueshift.
    * ``source_on_circle_in_plane``: classical circular source timing
      evaluated at the Lorentz-scaled emission epoch and period
      (t'' = gamma t, T'' = gamma T); ``t`` is the source's proper
      epoch and the sample is stamped at the caller's ``t`` with the
      medium-frame epoch in extras.  Secondary effects of order
      (R omega/c)^2 on the geometry are knowingly neglected.
    * ``observer_on_circle_in_plane``: ``t`` is the rotating observer's
      proper reception epoch; the classical implicit period equation
      runs at t'' = gamma t and the result is divided by gamma.

    In-plane crest timing uses ``medium.wave_speed``; every gamma uses
    ``c``.
    """

    if mode not in _CIRCULAR_REL_MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    if T <= 0.0 or f <= 0.0:
        raise ValidationError("T and f must be positive")
    if R <= 0.0 or r0 < 0.0:
        raise ValidationError("need R > 0 and r0 >= 0")
    speed = abs(R * omega)
    if speed >= c:
        raise DomainError("rotation speed at or above c")
    gamma_inv = math.sqrt(1.0 - (speed / c) ** 2)
    cprime = medium.wave_speed

    if mode == "source_on_circle_axis":
        f_obs = f * gamma_inv
        return DopplerSample(t, 1.0 / f_obs, f_obs, f_obs - f)
    if mode == "observer_on_circle_axis":
        f_obs = f / gamma_inv
        return DopplerSample(t, 1.0 / f_obs, f_obs, f_obs - f)

    if speed >= cprime:
        raise DomainError("rotation speed at or above the medium wave speed")
    gamma = 1.0 / gamma_inv
    t_medium = gamma * t

    if mode == "source_on_circle_in_plane":
        base = circular_doppler(
            R, r0, omega, t=t_medium, T=gamma * T, f=f, wave_speed=cprime,
            mode="source_on_circle",
        )
        return DopplerSample(
            t, base.period_obs, base.freq_obs, base.freq_obs - f,
            extras=(("t_medium", t_medium),),
        )

    base = circular_doppler(
        R, r0, omega, t=t_medium, T=T, f=f, wave_speed=cprime,
        mode="observer_on_circle", observer_method="small_R",
    )
    period_proper = base.period_obs * gamma_inv
    f_obs = 1.0 / period_proper
    return DopplerSample(
        t, period_proper, f_obs, f_obs - f,
        extras=(("t_medium", t_medium), ("period_medium", base.period_obs)),
    )


def moving_medium_wave_speed(medium: MediumSpec, c: float = C_LIGHT) -> float:
    """Effective wave speed toward the observer in a flowing medium.

    c* = (c/n - v_m)/(1 - v_m/(n c)), the relativistic composition of
    the in-medium speed with the flow; v_m > 0 streams against the
    propagation and drags c* down.  A headwind faster than c/n makes
    the result nonpositive; it is returned as-is, and feeding it into
    a MediumSpec (for the downstream shift) then fails validation,
    which is the physically meaningful outcome.
    """

    if c <= 0.0:
        raise ValidationError("c must be positive")
    n = medium.refractive_index
    vm = medium.flow_speed
    if abs(vm) >= c:
        raise DomainError("flow speed magnitude must stay below c")
    return (c / n - vm) / (1.0 - vm / (n * c))
