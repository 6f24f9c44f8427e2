"""Doppler induced by the refracting atmosphere.

Ionosphere side: the Appleton-Hartree magnetoionic index, its
high-frequency square-root and linear simplifications, electron-density
height profiles (linear slab, exponential, Chapman), the flat-layer
sky-wave shift formulas, and TEC-rate Doppler with plain-CSV vertical
TEC ingestion.  Troposphere side: the pressure/humidity refractivity
fit, quadratic and dry+wet quartic refractivity height profiles, the
elevation-geometry factor f(theta_E) in both quadrature and closed
form, the elevation-rate of a circular-orbit pass, and the assembly of
the two into a tropospheric shift.  A generic phase-path operation
covers arbitrary sampled media.

All shifts follow f_D = -(f/c) dP/dt with P the phase path.  A rising
ionospheric layer (positive Vz) therefore redshifts, while a growing
TEC blueshifts: extra electrons pull n below unity and shorten the
phase path.  Tropospheric refractivity stays in N-units throughout;
the 1e-6 scale enters exactly once, inside tropo_doppler.

The troposphere closed forms are antiderivatives of the quadrature
integrand and are evaluated in extended precision: their lower-limit
terms subtract near-equal multiples of Earth-radius powers, which
float64 cannot survive at grazing elevations.  Results are rounded to
float once, on return.
"""

from __future__ import annotations

import cmath
import csv
import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import mpmath as mp

from .core import C_LIGHT, EARTH, EarthModel, Vec3
from .errors import DomainError, NumericError, ValidationError
from .numerics import adaptive_simpson

__all__ = [
    "IonoProfile",
    "KAPPA_IONO",
    "LowElevationWarning",
    "PhasePath",
    "SHELL_HEIGHT_IONO",
    "TropoProfile",
    "appleton_hartree_n2",
    "elevation_rate",
    "flat_iono_doppler",
    "phase_path_doppler",
    "profile_Ne",
    "read_vtec_csv",
    "simplified_iono_n",
    "tec_doppler",
    "tec_rate",
    "tropo_doppler",
    "tropo_ftheta",
    "tropo_refractivity",
    "vtec_to_stec",
]

# --- Constants ---

# m^3/s^2; electron-density coefficient in n^2 = 1 - KAPPA_IONO*Ne/f^2
KAPPA_IONO = 80.61

# m; single-shell height used by the default VTEC->STEC obliquity mapping
SHELL_HEIGHT_IONO = 350_000.0

# rad; below this elevation the straight-slant replacement of the bent
# tropospheric ray stops being a second-order error
_MIN_TRUSTED_ELEVATION = math.radians(3.0)

_DPS = 50  # mpmath working precision for the closed forms


class LowElevationWarning(UserWarning):
    """Elevation low enough that the slant-path approximation degrades."""


# --- Profile types ---

_IONO_MODELS = ("flat_linear", "exponential", "chapman")
_TROPO_MODELS = ("quadratic", "quartic", "measured")


@dataclass(frozen=True)
class IonoProfile:
    """Electron-density height profile, el/m^3 as a function of altitude.

    Three models: flat_linear rises linearly above a base height h0
    (slope alpha in el/m^4, optional base lift rate Vz in m/s),
    exponential decays above h0 with rate alpha in 1/m from N0, and
    chapman peaks at Nmax around hmax with scale height H.
    """

    model: str
    alpha: float | None = None  # el/m^4 (flat_linear) or 1/m (exponential)
    h0: float | None = None  # m
    Vz: float | None = None  # m/s, flat_linear only
    N0: float | None = None  # el/m^3
    Nmax: float | None = None  # el/m^3
    hmax: float | None = None  # m
    H: float | None = None  # m

    def __post_init__(self) -> None:
        if self.model not in _IONO_MODELS:
            raise ValidationError(
                "unknown ionosphere model %r; expected one of %s"
                % (self.model, ", ".join(_IONO_MODELS))
            )
        if self.model == "flat_linear":
            self._need(alpha=self.alpha, h0=self.h0)
            if self.alpha < 0.0:
                raise ValidationError("flat_linear slope must be >= 0")
            if self.Vz is not None and not math.isfinite(self.Vz):
                raise ValidationError("Vz must be finite")
        elif self.model == "exponential":
            self._need(N0=self.N0, alpha=self.alpha, h0=self.h0)
            if self.N0 < 0.0:
                raise ValidationError("exponential base density must be >= 0")
        else:
            self._need(Nmax=self.Nmax, hmax=self.hmax, H=self.H)
            if self.Nmax < 0.0:
                raise ValidationError("chapman peak density must be >= 0")
            if self.H <= 0.0:
                raise ValidationError("chapman scale height must be > 0")

    def _need(self, **fields: float | None) -> None:
        for name, value in fields.items():
            if value is None or not math.isfinite(value):
                raise ValidationError(
                    "%s model requires finite %s" % (self.model, name)
                )

    @classmethod
    def flat_linear(
        cls, alpha: float, h0: float, Vz: float | None = None
    ) -> "IonoProfile":
        return cls(model="flat_linear", alpha=alpha, h0=h0, Vz=Vz)

    @classmethod
    def exponential(cls, N0: float, alpha: float, h0: float) -> "IonoProfile":
        return cls(model="exponential", N0=N0, alpha=alpha, h0=h0)

    @classmethod
    def chapman(cls, Nmax: float, hmax: float, H: float) -> "IonoProfile":
        return cls(model="chapman", Nmax=Nmax, hmax=hmax, H=H)


@dataclass(frozen=True)
class TropoProfile:
    """Tropospheric refractivity model plus the station height hT.

    quadratic: N falls as the square of the remaining height, from N_T
    at the station to zero at h0.  quartic: dry and wet components fall
    as the fourth power, vanishing at h0d and h0w respectively.
    measured: a single surface sample (total pressure P and water-vapor
    partial pressure e in millibar, temperature T_K in kelvin); it
    carries no height profile of its own.
    """

    model: str
    N_T: float | None = None  # N-units at the station (quadratic)
    h0: float | None = None  # m (quadratic)
    N_Td: float | None = None  # N-units (quartic dry)
    h0d: float | None = None  # m
    N_Tw: float | None = None  # N-units (quartic wet)
    h0w: float | None = None  # m
    P: float | None = None  # millibar (measured)
    e: float | None = None  # millibar
    T_K: float | None = None  # kelvin
    hT: float = 0.0  # m, station height

    def __post_init__(self) -> None:
        if self.model not in _TROPO_MODELS:
            raise ValidationError(
                "unknown troposphere model %r; expected one of %s"
                % (self.model, ", ".join(_TROPO_MODELS))
            )
        if not math.isfinite(self.hT):
            raise ValidationError("station height must be finite")
        if self.model == "quadratic":
            self._need(N_T=self.N_T, h0=self.h0)
            self._refractivity(self.N_T)
            self._ceiling(self.h0)
        elif self.model == "quartic":
            self._need(N_Td=self.N_Td, h0d=self.h0d, N_Tw=self.N_Tw, h0w=self.h0w)
            self._refractivity(self.N_Td)
            self._refractivity(self.N_Tw)
            self._ceiling(self.h0d)
            self._ceiling(self.h0w)
        else:
            self._need(P=self.P, e=self.e, T_K=self.T_K)
            if self.T_K <= 0.0:
                raise ValidationError("temperature must be > 0 K")
            if self.P < 0.0 or self.e < 0.0:
                raise ValidationError("pressures must be >= 0")

    def _need(self, **fields: float | None) -> None:
        for name, value in fields.items():
            if value is None or not math.isfinite(value):
                raise ValidationError(
                    "%s model requires finite %s" % (self.model, name)
                )

    def _refractivity(self, value: float) -> None:
        if value < 0.0:
            raise ValidationError("refractivity must be >= 0")

    def _ceiling(self, h0: float) -> None:
        if h0 <= self.hT:
            raise ValidationError("profile ceiling must lie above the station")

    @classmethod
    def quadratic(cls, N_T: float, h0: float, hT: float = 0.0) -> "TropoProfile":
        return cls(model="quadratic", N_T=N_T, h0=h0, hT=hT)

    @classmethod
    def quartic(
        cls, N_Td: float, h0d: float, N_Tw: float, h0w: float, hT: float = 0.0
    ) -> "TropoProfile":
        return cls(
            model="quartic", N_Td=N_Td, h0d=h0d, N_Tw=N_Tw, h0w=h0w, hT=hT
        )

    @classmethod
    def measured(cls, P: float, e: float, T_K: float, hT: float = 0.0) -> "TropoProfile":
        return cls(model="measured", P=P, e=e, T_K=T_K, hT=hT)


@dataclass(frozen=True)
class PhasePath:
    """Sampled propagation path at one instant: (point, n) pairs plus t.

    Samples are ordered along the path; the phase integral is the
    composite trapezoid of n over the straight segments between
    consecutive points.  Ionospheric n may sit below unity, but not
    below zero.
    """

    samples: tuple[tuple[Vec3, float], ...]
    t: float  # s

    def __post_init__(self) -> None:
        frozen = tuple((point, float(n)) for point, n in self.samples)
        object.__setattr__(self, "samples", frozen)
        if len(frozen) < 2:
            raise ValidationError("phase path needs at least 2 samples")
        for point, n in frozen:
            if not isinstance(point, Vec3):
                raise ValidationError("phase path samples must hold Vec3 points")
            if not math.isfinite(n) or n < 0.0:
                raise ValidationError("refractive index must be finite and >= 0")
        if not math.isfinite(self.t):
            raise ValidationError("timestamp must be finite")


# --- Ionospheric refractive index ---

_AH_MODES = ("ordinary", "extraordinary")


def appleton_hartree_n2(
    X: float, Y: float, Z: float, theta: float, mode: str = "ordinary"
) -> complex:
    """Magnetoionic n^2 for a cold plasma, complex when collisions act.

    X, Y, Z are the squared-plasma-, gyro- and collision-frequency
    ratios; theta is the angle between wave vector and magnetic field.
    The ordinary root takes the positive branch of the inner radical,
    the extraordinary root the negative one.  With Y = Z = 0 the
    expression collapses to 1 - X.
    """
    for name, value in (("X", X), ("Y", Y), ("Z", Z), ("theta", theta)):
        if not math.isfinite(value):
            raise ValidationError("%s must be finite" % name)
    if mode not in _AH_MODES:
        raise ValidationError(
            "unknown mode %r; expected one of %s" % (mode, ", ".join(_AH_MODES))
        )
    y_trans = Y * math.sin(theta)
    y_long = Y * math.cos(theta)
    if y_trans == 0.0:
        half = 0.0 + 0.0j
    else:
        inner = complex(1.0 - X, -Z)
        if inner == 0.0:
            raise NumericError("transverse gyro term divides by 1 - X - jZ = 0")
        half = y_trans * y_trans / (2.0 * inner)
    root = cmath.sqrt(half * half + y_long * y_long)
    if mode == "ordinary":
        denom = complex(1.0, -Z) - half + root
    else:
        denom = complex(1.0, -Z) - half - root
    if denom == 0.0:
        raise NumericError("magnetoionic denominator vanishes")
    return 1.0 - X / denom


_SIMPLIFIED_ORDERS = ("sqrt", "linear")


def simplified_iono_n(Ne: float, f: float, order: str = "sqrt") -> float:
    """High-frequency ionospheric index: sqrt(1 - kappa*Ne/f^2) or its
    linearization 1 - kappa*Ne/(2 f^2)."""
    if not math.isfinite(Ne) or Ne < 0.0:
        raise ValidationError("electron density must be finite and >= 0")
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("frequency must be positive")
    if order not in _SIMPLIFIED_ORDERS:
        raise ValidationError(
            "unknown order %r; expected one of %s"
            % (order, ", ".join(_SIMPLIFIED_ORDERS))
        )
    x = KAPPA_IONO * Ne / (f * f)
    if order == "sqrt":
        if x >= 1.0:
            raise DomainError("evanescent: kappa*Ne reaches f^2")
        return math.sqrt(1.0 - x)
    return 1.0 - 0.5 * x


def profile_Ne(profile: IonoProfile, h: float) -> float:
    """Electron density of the profile at altitude h (el/m^3).

    The slab models are empty below their base height; the Chapman
    layer extends over all altitudes.
    """
    if not isinstance(profile, IonoProfile):
        raise ValidationError("profile must be an IonoProfile")
    if not math.isfinite(h) or h < 0.0:
        raise ValidationError("altitude must be finite and >= 0")
    if profile.model == "flat_linear":
        if h < profile.h0:
            return 0.0
        return profile.alpha * (h - profile.h0)
    if profile.model == "exponential":
        if h < profile.h0:
            return 0.0
        return profile.N0 * math.exp(-profile.alpha * (h - profile.h0))
    z = (h - profile.hmax) / profile.H
    return profile.Nmax * math.exp(0.5 * (1.0 - z - math.exp(-z)))


# --- Phase-path Doppler ---


def _phase_integral(path: PhasePath) -> float:
    # fsum keeps the trapezoid exactly direction-independent
    terms = []
    for (p1, n1), (p2, n2) in zip(path.samples, path.samples[1:]):
        terms.append(0.5 * (n1 + n2) * (p2 - p1).norm())
    return math.fsum(terms)


def phase_path_doppler(path_t1: PhasePath, path_t2: PhasePath, f: float, c: float = C_LIGHT) -> float:
    """Shift from the finite-difference rate of the phase-path integral.

    f_D = -(f/c) (P(t2) - P(t1)) / (t2 - t1), each P the trapezoidal
    line integral of n over its sampled path.  Additive over path
    partitions and independent of the direction the samples run.
    """
    for path in (path_t1, path_t2):
        if not isinstance(path, PhasePath):
            raise ValidationError("arguments must be PhasePath instances")
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("frequency must be positive")
    if c <= 0.0:
        raise ValidationError("wave speed must be positive")
    dt = path_t2.t - path_t1.t
    if dt == 0.0:
        raise DomainError("phase paths carry identical timestamps")
    return -(f / c) * (_phase_integral(path_t2) - _phase_integral(path_t1)) / dt


# --- Flat-layer sky-wave shifts ---

_FLAT_VARIANTS = ("h0_varying", "alpha_varying")


def flat_iono_doppler(
    thetaE: float,
    f: float,
    variant: str = "h0_varying",
    *,
    Vz: float | None = None,
    alpha: float | None = None,
    h0: float | None = None,
    dThetaE_dt: float | None = None,
    c: float = C_LIGHT,
) -> float:
    """Sky-wave shift for a plane layer whose density rises linearly.

    The ray launches at elevation thetaE, arcs through the layer and
    returns to the ground; the shift covers the full up-and-down hop.
    h0_varying: the layer base rises at Vz while the slope stays put,
      f_D = -(f Vz/c) [sin(thetaE) + cos^2(thetaE) atanh(sin(thetaE))].
    alpha_varying: the slope drifts while the base holds; the published
      closed form is parametrized by the elevation rate dThetaE_dt with
      the hop range held fixed, and it degenerates at zenith.
    """
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("frequency must be positive")
    if c <= 0.0:
        raise ValidationError("wave speed must be positive")
    if variant not in _FLAT_VARIANTS:
        raise ValidationError(
            "unknown variant %r; expected one of %s"
            % (variant, ", ".join(_FLAT_VARIANTS))
        )
    if not math.isfinite(thetaE) or thetaE < 0.0 or thetaE > 0.5 * math.pi:
        raise ValidationError("elevation must lie in [0, pi/2]")
    if variant == "h0_varying":
        if Vz is None or not math.isfinite(Vz):
            raise ValidationError("h0_varying requires finite Vz")
        s = math.sin(thetaE)
        if s >= 1.0:
            bracket = 1.0  # cos^2 * atanh limit vanishes at zenith
        else:
            ct = math.cos(thetaE)
            bracket = s + ct * ct * math.atanh(s)
        return -(f * Vz / c) * bracket
    for name, value in (("alpha", alpha), ("h0", h0), ("dThetaE_dt", dThetaE_dt)):
        if value is None or not math.isfinite(value):
            raise ValidationError("alpha_varying requires finite %s" % name)
    if alpha <= 0.0:
        raise ValidationError("density slope must be positive")
    if h0 < 0.0:
        raise ValidationError("layer base must be >= 0")
    if thetaE == 0.5 * math.pi:
        raise DomainError("hop geometry degenerates at zenith")
    s = math.sin(thetaE)
    ct = math.cos(thetaE)
    # sin(thetaE) multiplied through the published bracket: stable at
    # thetaE -> 0 where the printed cot(thetaE) form is 0 * inf
    fact = 2.0 * f * f / (alpha * KAPPA_IONO)  # m
    bracket = (2.0 / 3.0) * (h0 / ct + fact * s * s / ct - 2.0 * fact * s * s * ct)
    return -(f / c) * bracket * dThetaE_dt


# --- TEC operations ---


def tec_doppler(dTEC_dt: float, f: float, c: float = C_LIGHT) -> float:
    """Ionospheric shift from the rate of change of slant TEC.

    f_D = kappa/(2 f c) dTEC/dt; growing content blueshifts.
    """
    if not math.isfinite(dTEC_dt):
        raise ValidationError("TEC rate must be finite")
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("frequency must be positive")
    if c <= 0.0:
        raise ValidationError("wave speed must be positive")
    return KAPPA_IONO / (2.0 * f * c) * dTEC_dt


def read_vtec_csv(path: str) -> tuple[tuple[float, float], ...]:
    """Read vertical TEC samples from a CSV with header t_unix_s,vtec_tecu.

    Returns (t, vtec) pairs with vtec converted to el/m^2 (1 TECU =
    1e16 el/m^2); timestamps must increase strictly.
    """
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows or [cell.strip() for cell in rows[0]] != ["t_unix_s", "vtec_tecu"]:
        raise ValidationError("expected CSV header 't_unix_s,vtec_tecu'")
    samples: list[tuple[float, float]] = []
    for row in rows[1:]:
        if not row:
            continue
        if len(row) != 2:
            raise ValidationError("each row needs exactly t_unix_s,vtec_tecu")
        try:
            t = float(row[0])
            vtec = float(row[1]) * 1e16  # TECU -> el/m^2
        except ValueError as exc:
            raise ValidationError("non-numeric TEC row: %r" % (row,)) from exc
        if not math.isfinite(t) or not math.isfinite(vtec) or vtec < 0.0:
            raise ValidationError("TEC samples must be finite with vtec >= 0")
        samples.append((t, vtec))
    for (t1, _), (t2, _) in zip(samples, samples[1:]):
        if t2 <= t1:
            raise ValidationError("timestamps must increase strictly")
    return tuple(samples)


def tec_rate(samples: Sequence[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    """Centered-difference d(TEC)/dt at the interior sample times."""
    if len(samples) < 3:
        raise ValidationError("centered differences need at least 3 samples")
    for (t1, _), (t2, _) in zip(samples, samples[1:]):
        if t2 <= t1:
            raise ValidationError("timestamps must increase strictly")
    rates = []
    for i in range(1, len(samples) - 1):
        t_prev, v_prev = samples[i - 1]
        t_here, _ = samples[i]
        t_next, v_next = samples[i + 1]
        rates.append((t_here, (v_next - v_prev) / (t_next - t_prev)))
    return tuple(rates)


def vtec_to_stec(
    vtec: float,
    zenith: float,
    shell_height: float = SHELL_HEIGHT_IONO,
    earth: EarthModel = EARTH,
) -> float:
    """Map vertical TEC to slant TEC with a single-shell obliquity factor.

    STEC = VTEC / cos(z') where sin(z') = R sin(z)/(R + shell_height).
    One replaceable strategy among many published mapping functions.
    """
    if not math.isfinite(vtec) or vtec < 0.0:
        raise ValidationError("vertical TEC must be finite and >= 0")
    if not math.isfinite(zenith) or zenith < 0.0 or zenith > 0.5 * math.pi:
        raise ValidationError("zenith angle must lie in [0, pi/2]")
    if shell_height <= 0.0:
        raise ValidationError("shell height must be positive")
    sin_zp = earth.R * math.sin(zenith) / (earth.R + shell_height)
    return vtec / math.sqrt(1.0 - sin_zp * sin_zp)


# --- Tropospheric refractivity and geometry ---


def tropo_refractivity(P: float, e: float, T_K: float) -> float:
    """Surface refractivity in N-units from pressure, humidity and
    temperature: N = 77.6/T_K (P + 4810 e/T_K), pressures in millibar."""
    if not math.isfinite(T_K) or T_K <= 0.0:
        raise ValidationError("temperature must be > 0 K")
    if not math.isfinite(P) or P < 0.0 or not math.isfinite(e) or e < 0.0:
        raise ValidationError("pressures must be finite and >= 0")
    return 77.6 / T_K * (P + 4810.0 * e / T_K)


def _quadratic_closed(N_T: float, rT: float, rtro: float, h: float, theta: float) -> float:
    # exact antiderivative of the quadrature integrand for N = N_T ((rtro-r)/h)^2
    with mp.workdps(_DPS):
        s = mp.sin(theta)
        b = rT * mp.cos(theta)
        l1 = rT * s
        l3 = mp.sqrt(rtro * rtro - b * b)
        bracket = l3 - l1 + rtro * mp.log(rT * (1.0 + s) / (rtro + l3))
        value = N_T * rT * (mp.cos(theta) + rT * mp.sin(2.0 * theta) / (h * h) * bracket)
        return float(value)


def _quartic_antiderivative(rho: mp.mpf, b: mp.mpf, r0: mp.mpf) -> mp.mpf:
    # G(rho) with G' = (sqrt(rho^2+b^2) - r0)^4 / rho^2
    rr = mp.sqrt(rho * rho + b * b)
    return (
        rho ** 3 / 3
        + 2 * b * b * rho
        + 6 * r0 * r0 * rho
        - 2 * r0 * rho * rr
        - (b ** 4 + 6 * r0 * r0 * b * b + r0 ** 4) / rho
        + 4 * r0 * (b * b + r0 * r0) * rr / rho
        - (6 * r0 * b * b + 4 * r0 ** 3) * mp.log(rho + rr)
    )


def _quartic_closed_component(
    N_Tx: float, rT: float, r0: float, hx: float, theta: float
) -> float:
    with mp.workdps(_DPS):
        b = rT * mp.cos(theta)
        l1 = rT * mp.sin(theta)
        l3 = mp.sqrt(mp.mpf(r0) * r0 - b * b)
        bracket = _quartic_antiderivative(l3, b, mp.mpf(r0)) - _quartic_antiderivative(
            l1, b, mp.mpf(r0)
        )
        value = N_Tx * rT * rT * mp.sin(2.0 * theta) / (2.0 * mp.mpf(hx) ** 4) * bracket
        return float(value)


def _tropo_components(
    profile: TropoProfile, earth: EarthModel
) -> tuple[tuple[float, float, float], ...]:
    # (N at station, profile ceiling radius, profile thickness) per component
    if profile.model == "quadratic":
        return ((profile.N_T, earth.R + profile.h0, profile.h0 - profile.hT),)
    return (
        (profile.N_Td, earth.R + profile.h0d, profile.h0d - profile.hT),
        (profile.N_Tw, earth.R + profile.h0w, profile.h0w - profile.hT),
    )


_FTHETA_METHODS = ("quadrature", "closed_form")


def tropo_ftheta(
    profile: TropoProfile,
    thetaE: float,
    earth: EarthModel = EARTH,
    method: str = "quadrature",
) -> float:
    """Elevation-geometry factor f(theta_E) in meters.

    f(theta_E) integrates N(r) against the elevation derivative of the
    slant-path stretch dp/dr between the station radius and the profile
    ceiling; tropo_doppler turns it into a shift.  quadrature runs
    adaptive Simpson per profile component; closed_form evaluates the
    exact antiderivatives.  Zenith is an exact zero of the geometry.
    """
    if not isinstance(profile, TropoProfile):
        raise ValidationError("profile must be a TropoProfile")
    if profile.model == "measured":
        raise ValidationError(
            "measured profile carries no height dependence; "
            "build a quadratic or quartic profile for f(theta_E)"
        )
    if method not in _FTHETA_METHODS:
        raise ValidationError(
            "unknown method %r; expected one of %s"
            % (method, ", ".join(_FTHETA_METHODS))
        )
    if not math.isfinite(thetaE) or thetaE <= 0.0 or thetaE > 0.5 * math.pi:
        raise ValidationError("elevation must lie in (0, pi/2]")
    if thetaE < _MIN_TRUSTED_ELEVATION:
        warnings.warn(
            "slant-path replacement degrades below 3 degrees elevation",
            LowElevationWarning,
            stacklevel=2,
        )
    if thetaE == 0.5 * math.pi:
        return 0.0
    rT = earth.R + profile.hT
    total = 0.0
    for N_x, r_ceil, thickness in _tropo_components(profile, earth):
        if profile.model == "quadratic":
            power = 2
        else:
            power = 4
        if method == "closed_form":
            if power == 2:
                total += _quadratic_closed(N_x, rT, r_ceil, thickness, thetaE)
            else:
                total += _quartic_closed_component(N_x, rT, r_ceil, thickness, thetaE)
            continue
        b = rT * math.cos(thetaE)
        geom = rT * rT * math.sin(2.0 * thetaE) / 2.0

        def integrand(r: float, N_x=N_x, r_ceil=r_ceil, thickness=thickness, b=b, geom=geom, power=power) -> float:
            n_units = N_x * ((r_ceil - r) / thickness) ** power
            return n_units * r * geom / (r * r - b * b) ** 1.5

        total += adaptive_simpson(integrand, rT, r_ceil, rel_tol=1e-9)
    return total


def elevation_rate(
    t: float,
    earth: EarthModel = EARTH,
    Rs: float = 26_560_000.0,
    hT: float = 0.0,
    omega: float = 2.0 * math.pi / 43_082.0,
    exact: bool = False,
) -> float:
    """Rate of the elevation angle for a circular-orbit overhead pass.

    d(theta_E)/dt = omega (Rs R' cos(omega t) - Rs^2) /
    (Rs^2 + R'^2 - 2 Rs R' cos(omega t)); the default branch drops the
    station height against the Earth radius (R' = R), exact keeps
    R' = R + hT.  Most negative at t = 0, when the satellite is
    overhead; even in t.
    """
    if Rs <= earth.R + hT:
        raise DomainError("satellite radius must exceed station radius")
    r_station = earth.R + hT if exact else earth.R
    cos_wt = math.cos(omega * t)
    num = Rs * r_station * cos_wt - Rs * Rs
    den = Rs * Rs + r_station * r_station - 2.0 * Rs * r_station * cos_wt
    return omega * num / den


def tropo_doppler(f: float, ftheta: float, dThetaE_dt: float, c: float = C_LIGHT) -> float:
    """Tropospheric shift: f_D = 1e-6 (f/c) f(theta_E) d(theta_E)/dt.

    The 1e-6 undoes the N-unit scale carried by tropo_ftheta.
    """
    if not math.isfinite(f) or f <= 0.0:
        raise ValidationError("frequency must be positive")
    if not math.isfinite(ftheta) or not math.isfinite(dThetaE_dt):
        raise ValidationError("inputs must be finite")
    if c <= 0.0:
        raise ValidationError("wave speed must be positive")
    return 1e-6 * f / c * ftheta * dThetaE_dt
