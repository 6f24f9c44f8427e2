"""Crest-tracking event simulator: brute-force Doppler ground truth.

Emits individual wave crests from a source trajectory, solves each
crest's arrival at the observer along a straight line (optionally
through a refractive field), and differences consecutive arrivals into
observed periods.  No closed-form Doppler expression appears anywhere
in this module, which is what makes it a usable oracle for the model
modules.

Numerical layout: arrivals are solved as offsets from the emission
epoch, and periods are assembled from emission spacings plus offset
differences.  Differencing absolute arrival times instead would lose
the entire signal once the period is small against the epochs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import C_LIGHT, Trajectory, Vec3
from .errors import NumericError, ValidationError
from .numerics import adaptive_simpson

__all__ = [
    "CrestRecord",
    "DilationSpec",
    "OracleResult",
    "estimate_frequency",
    "simulate_crests",
]

_MAX_OFFSET_ITER = 200
# Step size relative to the offset below which the light-time fixed
# point is considered converged (a few float64 ulps).
_OFFSET_REL_TOL = 4e-16


# --- Types ---


@dataclass(frozen=True)
class DilationSpec:
    """Time-dilation hooks for relativistic crest emission/reception.

    ``source_speed`` / ``observer_speed`` map a medium-frame epoch to
    the body's speed magnitude (m/s); ``c`` is the invariant speed the
    Lorentz factors are built from, which may differ from the wave
    propagation speed.  Either hook may be None.
    """

    source_speed: Callable[[float], float] | None = None
    observer_speed: Callable[[float], float] | None = None
    c: float = C_LIGHT

    def __post_init__(self) -> None:
        if not (isinstance(self.c, (int, float)) and self.c > 0.0):
            raise ValidationError("dilation c must be positive")


@dataclass(frozen=True)
class CrestRecord:
    """One crest: emission epoch, arrival epoch, straight-line path."""

    index: int
    t_emit: float  # s, medium frame
    t_arrive: float  # s, medium frame
    path_length: float  # m, geometric (unweighted by any medium)

    def __post_init__(self) -> None:
        if not self.t_arrive > self.t_emit:
            raise ValidationError(
                f"crest {self.index}: arrival {self.t_arrive!r} not after "
                f"emission {self.t_emit!r}"
            )


@dataclass(frozen=True)
class OracleResult:
    """Simulated crest train plus derived per-crest periods.

    ``periods[k]`` spans arrivals k and k+1.  Without dilation hooks it
    equals ``records[k+1].t_arrive - records[k].t_arrive`` up to offset
    arithmetic; with an observer hook it is the observer's proper
    period (records keep medium-frame arrivals so that their ordering
    invariant stays frame-consistent).
    """

    records: tuple[CrestRecord, ...]
    periods: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.records) < 2:
            raise ValidationError("need at least 2 crests for a period estimate")
        if len(self.periods) != len(self.records) - 1:
            raise ValidationError("periods must pair consecutive records")


# --- Simulation ---


def _gamma_inverse(speed_fn: Callable[[float], float], epoch: float, c: float, index: int) -> float:
    speed = speed_fn(epoch)
    beta = speed / c
    if not 0.0 <= beta < 1.0:
        raise NumericError(f"crest {index}: dilation speed {speed!r} outside [0, c)")
    return math.sqrt(1.0 - beta * beta)


def _travel_time(
    src_pos: Vec3,
    obs_pos: Vec3,
    t_emit: float,
    wave_speed: float,
    medium_n: Callable[[Vec3, float], float] | None,
) -> tuple[float, float]:
    """Return (travel time, geometric path length) for one straight path.

    With a refractive field, the local speed is wave_speed/n and the
    field is sampled at the emission epoch (frozen during transit).
    """

    delta = obs_pos - src_pos
    length = delta.norm()
    if medium_n is None:
        return length / wave_speed, length

    def integrand(s: float) -> float:
        point = Vec3(
            src_pos.x + s * delta.x,
            src_pos.y + s * delta.y,
            src_pos.z + s * delta.z,
        )
        n = medium_n(point, t_emit)
        if not (math.isfinite(n) and n > 0.0):
            raise NumericError(f"refractive index {n!r} not positive along path")
        return n - 1.0

    if length == 0.0:
        return 0.0, 0.0
    # Integrating n - 1 keeps near-unity media (n - 1 ~ 1e-6) from
    # drowning in the quadrature tolerance of the trivial unity part;
    # the abs_tol floor covers fields that are exactly 1 somewhere.
    mean_excess = adaptive_simpson(integrand, 0.0, 1.0, rel_tol=1e-12, abs_tol=1e-16)
    return (length + length * mean_excess) / wave_speed, length


def _solve_arrival_offset(
    traj_obs: Trajectory,
    src_pos: Vec3,
    t_emit: float,
    wave_speed: float,
    medium_n: Callable[[Vec3, float], float] | None,
    index: int,
) -> tuple[float, float]:
    """Fixed point of offset = travel_time(observer at t_emit + offset)."""

    def timed(epoch: float) -> tuple[float, float]:
        try:
            return _travel_time(
                src_pos, traj_obs.position(epoch), t_emit, wave_speed, medium_n
            )
        except NumericError as exc:
            raise NumericError(f"crest {index}: {exc}") from exc

    offset, length = timed(t_emit)
    prev_step = math.inf
    for _ in range(_MAX_OFFSET_ITER):
        nxt, length = timed(t_emit + offset)
        step = abs(nxt - offset)
        offset = nxt
        if step <= _OFFSET_REL_TOL * abs(offset):
            return offset, length
        if step >= prev_step and step <= 1e-12 * abs(offset):
            return offset, length  # riding float noise, nothing left to gain
        if step >= prev_step and prev_step != math.inf:
            raise NumericError(f"crest {index}: light-time iteration not contracting")
        prev_step = step
    raise NumericError(f"crest {index}: light-time iteration did not converge")


def simulate_crests(
    traj_src: Trajectory,
    traj_obs: Trajectory,
    medium_n: Callable[[Vec3, float], float] | None,
    f: float,
    count: int,
    t0: float,
    wave_speed: float,
    dilation: DilationSpec | None = None,
) -> OracleResult:
    """Emit ``count`` crests at source period 1/f and track each arrival.

    Crest k leaves at t0 + k/f in the medium frame, or with each
    spacing stretched by the source Lorentz factor when a dilation
    source hook is given (the factor is sampled at the start of each
    spacing).  Arrivals solve the straight-line light-time equation,
    with travel time path-integrated through ``medium_n`` when given.
    An observer dilation hook converts the arrival spacings to the
    observer's proper time, sampled at each spacing's midpoint.
    """

    if count < 2:
        raise ValidationError("count must be >= 2")
    if f <= 0.0 or wave_speed <= 0.0:
        raise ValidationError("f and wave_speed must be positive")
    period_src = 1.0 / f

    # Emission epochs and their exact spacings.
    emit_times = [float(t0)]
    spacings: list[float] = []
    for k in range(count - 1):
        spacing = period_src
        if dilation is not None and dilation.source_speed is not None:
            spacing = period_src / _gamma_inverse(
                dilation.source_speed, emit_times[-1], dilation.c, k
            )
        spacings.append(spacing)
        emit_times.append(emit_times[-1] + spacing)

    offsets: list[float] = []
    lengths: list[float] = []
    for k, t_emit in enumerate(emit_times):
        try:
            offset, length = _solve_arrival_offset(
                traj_obs, traj_src.position(t_emit), t_emit, wave_speed, medium_n, k
            )
        except NumericError:
            raise
        except (ValueError, ArithmeticError) as exc:
            raise NumericError(f"crest {k}: light-time failure: {exc}") from exc
        if offset <= 0.0:
            raise NumericError(f"crest {k}: nonpositive travel time {offset!r}")
        offsets.append(offset)
        lengths.append(length)

    # Periods in offset form: exact spacing plus offset difference.
    periods: list[float] = []
    for k in range(count - 1):
        raw = spacings[k] + (offsets[k + 1] - offsets[k])
        if raw <= 0.0:
            raise NumericError(f"crest {k}: arrivals out of order")
        if dilation is not None and dilation.observer_speed is not None:
            mid = emit_times[k] + offsets[k] + 0.5 * raw
            raw *= _gamma_inverse(dilation.observer_speed, mid, dilation.c, k)
        periods.append(raw)

    records = tuple(
        CrestRecord(k, emit_times[k], emit_times[k] + offsets[k], lengths[k])
        for k in range(count)
    )
    return OracleResult(records, tuple(periods))


def estimate_frequency(result: OracleResult) -> list[tuple[float, float]]:
    """Per-crest-pair observed frequency, stamped at arrival midpoints."""

    out: list[tuple[float, float]] = []
    for k, period in enumerate(result.periods):
        mid = 0.5 * (result.records[k].t_arrive + result.records[k + 1].t_arrive)
        out.append((mid, 1.0 / period))
    return out
