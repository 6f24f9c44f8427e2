"""Acoustic Doppler with a moving source, observer, and medium.

All motion is projected on the source-to-observer line, with a sign
convention chosen so the everyday cases read naturally:

    v_s > 0   source closing on the observer      -> higher pitch
    v_o > 0   observer running from the source    -> lower pitch
    v_m > 0   medium blowing from source to observer

The medium drags the whole wave pattern, so the working wave speed is
v_w = v + v_m, clamped at zero: a headwind at or beyond the sound
speed stops anything from arriving at all.  Worked signs for a 343 m/s
medium: a source closing at 34.3 m/s gives f' = f / 0.9 (pitch up); an
observer fleeing at 34.3 m/s gives f' = 0.9 f (pitch down); the two
are close but not equal, which is the classical source/observer
asymmetry.

The regime classifier reports the Mach number as a speed ratio
|v_s| / v_w.  Direction lives in the shift formula, not in the cone:
a source tearing away supersonically still trails a Mach cone, and an
observer behind that cone hears the capped frequency
f v_w / (v_w + |v_s|), which is exactly what the shift formula returns
for the receding sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError

__all__ = [
    "AcousticScenario",
    "MachInfo",
    "acoustic_shift",
    "mach_info",
    "medium_wave_params",
]

# Width of the band just below Mach 1 reported as "sonic".  One-sided:
# anything strictly above 1 has a well-formed cone and counts as
# supersonic, however thin the margin.
_SONIC_BAND = 1e-9

_REGIMES = ("subsonic", "sonic", "supersonic")


# --- Types ---


@dataclass(frozen=True)
class AcousticScenario:
    """Line-of-sight acoustic setup: still-medium sound speed v,
    medium flow v_m (signed toward the observer), source speed v_s
    (signed toward the observer), observer speed v_o (signed away from
    the source), and emitted frequency f."""

    v: float  # m/s, sound speed in the still medium
    v_m: float  # m/s, medium flow along the line, toward observer
    v_s: float  # m/s, source speed, positive toward observer
    v_o: float  # m/s, observer speed, positive away from source
    f: float  # Hz

    def __post_init__(self) -> None:
        if not (math.isfinite(self.v) and self.v > 0.0):
            raise ValidationError("sound speed v must be positive")
        if not (math.isfinite(self.f) and self.f > 0.0):
            raise ValidationError("emitted frequency f must be positive")
        for name, val in (("v_m", self.v_m), ("v_s", self.v_s), ("v_o", self.v_o)):
            if not math.isfinite(val):
                raise ValidationError(f"{name} must be finite")


@dataclass(frozen=True)
class MachInfo:
    """Regime report for a source against the working wave speed.

    ``mach`` is the speed ratio |v_s| / v_w.  Supersonic reports carry
    the cone half-angle (sin of which is 1/mach) and ``limit_ratio``,
    the floor an observer behind the cone hears as a fraction of the
    emitted frequency: f' >= f * limit_ratio.
    """

    mach: float
    regime: str
    cone_half_angle: float | None = None  # rad, supersonic only
    limit_ratio: float | None = None  # dimensionless, supersonic only

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mach) and self.mach >= 0.0):
            raise ValidationError("mach must be a finite speed ratio")
        if self.regime not in _REGIMES:
            raise ValidationError(f"regime must be one of {_REGIMES}")
        supersonic = self.regime == "supersonic"
        if (self.cone_half_angle is not None) != supersonic:
            raise ValidationError("cone_half_angle is for supersonic reports only")
        if (self.limit_ratio is not None) != supersonic:
            raise ValidationError("limit_ratio is for supersonic reports only")
        if supersonic:
            if not 0.0 < self.cone_half_angle <= 0.5 * math.pi:
                raise ValidationError("cone half-angle must lie in (0, pi/2]")
            if abs(math.sin(self.cone_half_angle) * self.mach - 1.0) > 1e-12:
                raise ValidationError("cone half-angle must satisfy sin(angle) = 1/mach")
            if not 0.0 < self.limit_ratio < 1.0:
                raise ValidationError("behind-cone limit ratio must lie in (0, 1)")


# --- Operations ---


def acoustic_shift(scn: AcousticScenario) -> float:
    """Received frequency f' = f (v_w - v_o) / (v_w - v_s), Hz.

    v_w = max(0, v + v_m) is the wave speed over the ground.  Three
    refusals guard the formula's domain: a flow that cancels the sound
    speed (nothing propagates), an observer at or beyond v_w (the wave
    never catches up), and a source at or beyond v_w (no steady
    frequency exists ahead of the source; the regime, cone and
    behind-cone floor live in mach_info).
    """
    if not isinstance(scn, AcousticScenario):
        raise ValidationError("scn must be an AcousticScenario")
    v_w = max(0.0, scn.v + scn.v_m)
    if v_w == 0.0:
        raise DomainError(
            "medium flow cancels the sound speed: unable to propagate "
            "against the flow"
        )
    if scn.v_o >= v_w:
        raise DomainError(
            "observer at or beyond the wave speed will never receive "
            "the acoustic signals"
        )
    if scn.v_s >= v_w:
        raise DomainError(
            "source at or beyond the wave speed: no steady frequency "
            "ahead of the source; see mach_info for the regime and the "
            "behind-cone limit"
        )
    return scn.f * (v_w - scn.v_o) / (v_w - scn.v_s)


def medium_wave_params(v_s: float, v_w: float, f: float) -> tuple[float, float]:
    """Frequency and wavelength of the wave pattern in the medium.

    A source closing at v_s crowds its crests into the medium at
    f_w = f / (1 - v_s / v_w) with spacing lambda_w = (v_w - v_s) / f;
    their product recovers v_w.
    """
    for name, val in (("v_s", v_s), ("v_w", v_w), ("f", f)):
        if not math.isfinite(val):
            raise ValidationError(f"{name} must be finite")
    if v_w <= 0.0:
        raise ValidationError("wave speed v_w must be positive")
    if f <= 0.0:
        raise ValidationError("emitted frequency f must be positive")
    if v_s >= v_w:
        raise DomainError(
            "source at or beyond the wave speed leaves no wave pattern "
            "ahead of it"
        )
    f_w = f / (1.0 - v_s / v_w)
    lambda_w = (v_w - v_s) / f
    return f_w, lambda_w


def mach_info(v_s: float, v_w: float) -> MachInfo:
    """Classify |v_s| against v_w: subsonic, sonic, or supersonic.

    The sonic label covers the closed band [1 - 1e-9, 1]; any excess
    above Mach 1 forms a cone of half-angle asin(1/mach), however
    slim.  Supersonic reports add the behind-cone frequency floor
    v_w / (v_w + |v_s|) as a fraction of the emitted frequency.
    """
    for name, val in (("v_s", v_s), ("v_w", v_w)):
        if not math.isfinite(val):
            raise ValidationError(f"{name} must be finite")
    if v_w <= 0.0:
        raise ValidationError("wave speed v_w must be positive")
    speed = abs(v_s)
    mach = speed / v_w
    if mach > 1.0:
        return MachInfo(
            mach=mach,
            regime="supersonic",
            cone_half_angle=math.asin(1.0 / mach),
            limit_ratio=v_w / (v_w + speed),
        )
    if 1.0 - mach <= _SONIC_BAND:
        return MachInfo(mach=mach, regime="sonic")
    return MachInfo(mach=mach, regime="subsonic")
