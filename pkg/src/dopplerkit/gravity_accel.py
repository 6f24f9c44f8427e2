"""Doppler by uniform acceleration and by gravity.

Accelerated-frame shifts in two strengths (the first-order equivalence
form and the exact two-crest geometry), gravitational red/blue shift
from potential differences, the exact Schwarzschild stationary-clock
ratio with its first-order expansion, rotor (Moessbauer) energy-shift
variants, and the maximal-acceleration dilation model.

The accelerated-frame and Schwarzschild operations are evaluated in
extended precision internally: the structure that distinguishes the
exact forms from their first-order expansions sits many decades below
float64 resolution at laboratory and Earth-orbit parameter values, and
a plain float evaluation would replace it with rounding noise.  Every
result is rounded to float exactly once, on return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .core import C_LIGHT, EARTH
from .errors import DomainError, NumericError, ValidationError

__all__ = [
    "A_MAX_ROTOR_FIT",
    "AccelFrameConfig",
    "OblateSpec",
    "PotentialSpec",
    "ROTOR_K_DILATION",
    "ROTOR_K_LATER_ROTORS",
    "ROTOR_K_REANALYZED",
    "accel_frame_shift_exact",
    "accel_frame_shift_first_order",
    "friedman_shift",
    "gravitational_shift",
    "rotor_energy_shift",
    "schwarzschild_ratio",
    "schwarzschild_ratio_first_order",
]

_DPS = 50  # working digits for the extended-precision operations

# Rotor experiments fit Delta E / E = -k v^2/c^2 with different k.
ROTOR_K_DILATION = 0.5  # pure time-dilation prediction
ROTOR_K_REANALYZED = 1.192 / 2.0  # re-analysis of the original rotor data
ROTOR_K_LATER_ROTORS = 2.0 / 3.0  # later rotor experiment series

# Maximal-acceleration value fitted from the same rotor data, m/s^2.
A_MAX_ROTOR_FIT = 1.006e19


# --- Domain types ---


@dataclass(frozen=True)
class OblateSpec:
    """Quadrupole correction to the spherical potential.

    ``polar_angle`` is measured from the rotation axis (0 at the pole,
    pi/2 on the equator).  Defaults are Earth's quadrupole moment and
    equatorial radius.
    """

    polar_angle: float  # rad
    j2: float = EARTH.J2
    a1: float = EARTH.a1  # m

    def __post_init__(self) -> None:
        if not 0.0 <= self.polar_angle <= math.pi:
            raise ValidationError("polar_angle must lie in [0, pi]")
        if not (math.isfinite(self.j2) and self.a1 > 0.0):
            raise ValidationError("need finite j2 and a1 > 0")


@dataclass(frozen=True)
class PotentialSpec:
    """Gravitational potential of one body's location.

    Give either ``GM`` (with ``r`` for a concrete location) or a
    ready-made ``potential`` in J/kg.  ``oblate`` adds the quadrupole
    term to the spherical -GM/r and is only meaningful with ``GM``.
    """

    GM: float | None = None  # m^3/s^2
    r: float | None = None  # m
    potential: float | None = None  # J/kg
    oblate: OblateSpec | None = None

    def __post_init__(self) -> None:
        if (self.GM is None) == (self.potential is None):
            raise ValidationError("give exactly one of GM and potential")
        if self.GM is None:
            if self.r is not None or self.oblate is not None:
                raise ValidationError("r and oblate only apply to the GM form")
            if not math.isfinite(self.potential):
                raise ValidationError("potential must be finite")
            return
        if not (math.isfinite(self.GM) and self.GM > 0.0):
            raise ValidationError(f"GM must be positive, got {self.GM!r}")
        if self.r is not None and not self.r > 0.0:
            raise ValidationError(f"r must be positive, got {self.r!r}")

    def potential_at(self, r: float) -> float:
        """Newtonian potential at radius ``r``, J/kg."""

        if self.GM is None:
            raise ValidationError("potential_at needs the GM form")
        if not r > 0.0:
            raise DomainError(f"radius must be positive, got {r!r}")
        phi = -self.GM / r
        if self.oblate is not None:
            x = math.cos(self.oblate.polar_angle)
            legendre2 = 0.5 * (3.0 * x * x - 1.0)
            phi *= 1.0 - self.oblate.j2 * (self.oblate.a1 / r) ** 2 * legendre2
        return phi

    def value(self) -> float:
        """Potential of this location, J/kg."""

        if self.potential is not None:
            return self.potential
        if self.r is None:
            raise ValidationError("GM form needs r to have a concrete potential")
        return self.potential_at(self.r)


@dataclass(frozen=True)
class AccelFrameConfig:
    """Accelerated cabin: source and observer a fixed distance apart.

    ``X`` separates source and observer; ``a`` is the proper
    acceleration, positive when the wave travels opposite to it (the
    observer accelerates toward the incoming crests, blueshift).  ``T``
    is the emitted crest spacing, needed only by the exact form.
    """

    a: float  # m/s^2, signed
    X: float  # m
    f: float  # Hz
    T: float | None = None  # s

    def __post_init__(self) -> None:
        if not math.isfinite(self.a):
            raise ValidationError("a must be finite")
        if not self.X > 0.0:
            raise ValidationError(f"X must be positive, got {self.X!r}")
        if not self.f > 0.0:
            raise ValidationError(f"f must be positive, got {self.f!r}")
        if self.T is not None and not self.T > 0.0:
            raise ValidationError(f"T must be positive, got {self.T!r}")
        if self.a * self.X >= C_LIGHT * C_LIGHT:
            raise ValidationError("a*X at or above c^2 (beyond the horizon)")


# --- Accelerated frame ---


def accel_frame_shift_first_order(cfg: AccelFrameConfig, c: float = C_LIGHT) -> float:
    """Doppler shift in the accelerated cabin, first order in aX/c^2.

    Returns the shift f_D = f' - f = f aX/c^2 in Hz; add ``cfg.f`` to
    recover the received frequency.  The shift is returned rather than
    f' because the interesting structure (fractions of a microhertz on
    a gigahertz carrier) would otherwise vanish into float rounding.
    Negative ``a`` (wave along the acceleration) gives a redshift.
    """

    if c <= 0.0:
        raise ValidationError("c must be positive")
    with mp.workdps(_DPS):
        eps = mp.mpf(cfg.a) * mp.mpf(cfg.X) / (mp.mpf(c) ** 2)
        if eps >= 1:
            raise DomainError("a*X at or above c^2 (beyond the horizon)")
        if eps <= -1:
            raise DomainError("a*X at or below -c^2 (wave never arrives)")
        return float(mp.mpf(cfg.f) * eps)


def accel_frame_shift_exact(cfg: AccelFrameConfig, c: float = C_LIGHT) -> float:
    """Doppler shift from the exact two-crest geometry.

    With k = a/c, the first crest's flight time t1' and the second
    crest's geometry give the received rate

        f' = 2k (A + k t1') / (A^2 - k^2 t1'^2 - 1),
        t1' = (X/c) (1 + aX/(2c^2)) / (1 + aX/c^2),
        A   = kT + sqrt(1 + (aT/c)^2) + sqrt(1 + (a t1')^2/c^2) - 1,

    for crests emitted every ``cfg.T`` seconds; the returned shift is
    f' - 1/T in Hz (``cfg.f`` plays no role here; pair the two forms
    through f = 1/T).  The denominator is evaluated in the rearranged
    form P (P + 2 sqrt(1 + u^2)) with P = kT + sqrt(1 + (kT)^2) - 1
    and u = k t1', which is algebraically identical but free of the
    printed form's catastrophic cancellation.
    """

    if cfg.T is None:
        raise ValidationError("exact form needs the crest spacing T")
    if c <= 0.0:
        raise ValidationError("c must be positive")
    if cfg.a == 0.0:
        return 0.0
    with mp.workdps(_DPS):
        a, X, T, cc = mp.mpf(cfg.a), mp.mpf(cfg.X), mp.mpf(cfg.T), mp.mpf(c)
        eps = a * X / cc**2
        if eps >= 1:
            raise DomainError("a*X at or above c^2 (beyond the horizon)")
        k = a / cc
        t1p = (X / cc) * (1 + eps / 2) / (1 + eps)
        u = k * t1p
        kt = k * T
        p = kt + mp.sqrt(1 + kt * kt) - 1
        root_u = mp.sqrt(1 + u * u)
        denom = p * (p + 2 * root_u)
        if denom <= 0:
            raise NumericError("crest-geometry denominator not positive")
        f_prime = 2 * k * (p + root_u + u) / denom
        if f_prime <= 0:
            raise NumericError("crest-geometry frequency not positive")
        return float(f_prime - 1 / T)


# --- Gravitational shift ---


def gravitational_shift(
    src: PotentialSpec, obs: PotentialSpec, f: float, c: float = C_LIGHT
) -> float:
    """Received frequency across a potential difference.

    f' = f (1 + (Phi_s - Phi_o)/c^2): a source higher in the potential
    (less negative Phi_s) arrives blueshifted.  The two potentials may
    come from different bodies.
    """

    if f <= 0.0 or c <= 0.0:
        raise ValidationError("f and c must be positive")
    return f * (1.0 + (src.value() - obs.value()) / (c * c))


def _check_above_horizon(body: PotentialSpec, r: float, c: float) -> None:
    if body.GM is None:
        raise ValidationError("Schwarzschild ratio needs the GM form")
    r_horizon = 2.0 * body.GM / (c * c)
    if r <= r_horizon:
        raise DomainError(
            f"r = {r!r} at or inside the event horizon ({r_horizon!r} m)"
        )


def schwarzschild_ratio(
    r1: float, r2: float, phi0: float, body: PotentialSpec, c: float = C_LIGHT
) -> float:
    """Exact frequency ratio f_r1/f_r2 between stationary clocks.

    From the stationary-clock metric factor, relative to a reference
    potential ``phi0`` (e.g. the geoid):

        f_r1/f_r2 = sqrt((1 + 2(Phi(r2) - phi0)/c^2)
                        /(1 + 2(Phi(r1) - phi0)/c^2)).

    The reference cancels to first order; it is kept because the exact
    ratio is computed against clocks disciplined to that reference.
    """

    _check_above_horizon(body, r1, c)
    _check_above_horizon(body, r2, c)
    if not math.isfinite(phi0):
        raise ValidationError("phi0 must be finite")
    with mp.workdps(_DPS):
        cc2 = mp.mpf(c) ** 2
        top = 1 + 2 * (mp.mpf(body.potential_at(r2)) - mp.mpf(phi0)) / cc2
        bot = 1 + 2 * (mp.mpf(body.potential_at(r1)) - mp.mpf(phi0)) / cc2
        if top <= 0 or bot <= 0:
            raise DomainError("metric factor not positive at these radii")
        return float(mp.sqrt(top / bot))


def schwarzschild_ratio_first_order(
    r1: float, r2: float, body: PotentialSpec, c: float = C_LIGHT
) -> float:
    """First-order expansion of the stationary-clock ratio.

    f_r1/f_r2 ~ 1 + (Phi(r2) - Phi(r1))/c^2; the reference potential
    drops out at this order.  Away from the horizon it matches the
    exact ratio to O(1/c^4).
    """

    _check_above_horizon(body, r1, c)
    _check_above_horizon(body, r2, c)
    with mp.workdps(_DPS):
        cc2 = mp.mpf(c) ** 2
        phi1 = mp.mpf(body.potential_at(r1))
        phi2 = mp.mpf(body.potential_at(r2))
        return float(1 + (phi2 - phi1) / cc2)


# --- Rotor experiments and maximal acceleration ---


def rotor_energy_shift(v: float, k: float, c: float = C_LIGHT) -> float:
    """Relative energy shift -k v^2/c^2 measured on a rotor rim.

    ``k`` selects the model: ROTOR_K_DILATION for the pure
    time-dilation prediction, ROTOR_K_REANALYZED and
    ROTOR_K_LATER_ROTORS for the experimentally fitted coefficients.
    """

    if not k > 0.0:
        raise ValidationError(f"k must be positive, got {k!r}")
    if c <= 0.0:
        raise ValidationError("c must be positive")
    if not abs(v) < c:
        raise DomainError("|v| must stay below c")
    return -k * (v / c) ** 2


def friedman_shift(
    v: float, a: float, a_max: float, classic_ratio: float, c: float = C_LIGHT
) -> float:
    """Doppler ratio with an extra dilation by acceleration.

    f'/f = classic_ratio / (sqrt(1 - v^2/c^2) sqrt(1 - a^2/a_max^2)).
    The acceleration term is normalized by a_max squared; anything
    else would put dimensioned quantities under the radical.  Use
    A_MAX_ROTOR_FIT for the rotor-data estimate of a_max.
    """

    if not (classic_ratio > 0.0 and math.isfinite(classic_ratio)):
        raise ValidationError("classic_ratio must be positive and finite")
    if not a_max > 0.0:
        raise ValidationError(f"a_max must be positive, got {a_max!r}")
    if a < 0.0:
        raise ValidationError(f"a must be nonnegative, got {a!r}")
    if c <= 0.0:
        raise ValidationError("c must be positive")
    if not abs(v) < c:
        raise DomainError("|v| must stay below c")
    if a >= a_max:
        raise DomainError("a at or above the maximal acceleration")
    return classic_ratio / (
        math.sqrt(1.0 - (v / c) ** 2) * math.sqrt(1.0 - (a / a_max) ** 2)
    )
