"""Scenario-file driven command line front end.

A JSON scenario file names an operation family, its parameters, and a
grid; ``run`` sweeps the grid and writes CSV or JSON, ``verify`` reruns
supported kinds against an independent route (the crest simulator for
moving-body kinds, quadrature for the troposphere factor) and reports
the worst relative deviation, and ``list-scenarios`` prints the
registry.  Numeric output is formatted to 17 significant digits so the
same scenario file always produces byte-identical files.

Scenario file shape::

    {
      "schema_version": 1,
      "scenario": "<tag>",
      "params": { ... SI units ... },
      "grid": {"t_start": 0.0, "t_end": 10.0, "steps": 100},
      "constants": {"c": 3.0e8},          // optional override
      "outputs": {"format": "csv", "path": "out.csv"}   // optional
    }

The grid variable is time for every kind except quartic-troposphere,
where it sweeps the elevation angle in radians.  Exit codes: 0
success, 1 verify deviation beyond tolerance, 2 validation error,
3 numeric or physical-domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .acoustic import AcousticScenario, acoustic_shift
from .applications import (
    IONO_TOP_ALTITUDE,
    SatNavScenario,
    satnav_doppler_budget,
    satnav_period_ratio,
)
from .atmosphere import (
    KAPPA_IONO,
    IonoProfile,
    SHELL_HEIGHT_IONO,
    TropoProfile,
    _tropo_components,
    profile_Ne,
    read_vtec_csv,
    tec_doppler,
    tropo_ftheta,
    vtec_to_stec,
)
from .classical import (
    circular_doppler,
    linear_accel_doppler,
    two_event_period,
)
from .core import C_LIGHT, EARTH, EarthModel, Trajectory, Vec3
from .errors import DomainError, NumericError, ValidationError
from .gravity_accel import PotentialSpec, gravitational_shift
from .oracle import DilationSpec, simulate_crests
from .relativistic import longitudinal_shift

__all__ = [
    "GridSpec",
    "RunReport",
    "ScenarioFile",
    "VerifyReport",
    "list_scenarios",
    "load_scenario",
    "main",
    "run",
    "verify",
]

_DOPPLER_COLUMNS = ("t_s", "f_obs_hz", "f_shift_hz")
_BUDGET_COLUMNS = (
    "t_s",
    "f_obs_hz",
    "f_shift_hz",
    "i_g_hz",
    "i_s_hz",
    "i_t_hz",
    "i_i_hz",
    "sagnac_hz",
    "total_hz",
)


# --- Scenario file model ---


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid: ``steps`` points from t_start to t_end inclusive."""

    t_start: float
    t_end: float
    steps: int

    def __post_init__(self) -> None:
        for name, val in (("t_start", self.t_start), ("t_end", self.t_end)):
            if not (isinstance(val, (int, float)) and math.isfinite(val)):
                raise ValidationError(f"grid.{name} must be a finite number")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int):
            raise ValidationError("grid.steps must be an integer")
        if self.steps < 1:
            raise ValidationError("grid.steps must be >= 1")
        if self.steps > 1 and not self.t_end > self.t_start:
            raise ValidationError("grid needs t_end > t_start when steps > 1")

    def points(self) -> list[float]:
        if self.steps == 1:
            return [float(self.t_start)]
        span = self.t_end - self.t_start
        last = self.steps - 1
        return [self.t_start + span * i / last for i in range(self.steps)]


@dataclass(frozen=True)
class ScenarioFile:
    """Parsed and validated scenario file."""

    schema_version: int
    scenario: str
    params: dict
    grid: GridSpec
    c: float
    out_format: str | None
    out_path: str | None


@dataclass(frozen=True)
class RunReport:
    """What a run produced: row count, surfaced warnings, wall time."""

    rows: int
    warnings: tuple[str, ...]
    elapsed_s: float


@dataclass(frozen=True)
class VerifyReport:
    """Closed-form vs oracle comparison over the grid.

    ``rows`` holds (grid value, closed route, oracle route, relative
    deviation) per point; ``passed`` is max_deviation <= tolerance.
    """

    rows: tuple[tuple[float, float, float, float], ...]
    max_deviation: float
    tolerance: float
    passed: bool


def load_scenario(path: str) -> ScenarioFile:
    """Parse and validate a scenario file, or raise ValidationError."""

    try:
        with open(path, encoding="utf-8") as handle:
            tree = json.load(handle)
    except OSError as exc:
        raise ValidationError(f"cannot read scenario file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(tree, dict):
        raise ValidationError("scenario file must hold a JSON object")
    known = {"schema_version", "scenario", "params", "grid", "constants", "outputs"}
    unknown = sorted(set(tree) - known)
    if unknown:
        raise ValidationError(f"unknown scenario file keys: {', '.join(unknown)}")
    for key in ("schema_version", "scenario", "params", "grid"):
        if key not in tree:
            raise ValidationError(f"scenario file is missing '{key}'")

    version = tree["schema_version"]
    if isinstance(version, bool) or not isinstance(version, int):
        raise ValidationError("schema_version must be an integer")
    if version != 1:
        raise ValidationError(f"schema_version {version} not supported; this build reads 1")

    tag = tree["scenario"]
    if not isinstance(tag, str):
        raise ValidationError("scenario must be a string tag")
    if tag not in _REGISTRY:
        raise ValidationError(
            f"unknown scenario tag '{tag}'; known tags: "
            + ", ".join(sorted(_REGISTRY))
        )

    if not isinstance(tree["params"], dict):
        raise ValidationError("params must be an object")

    grid_tree = tree["grid"]
    if not isinstance(grid_tree, dict):
        raise ValidationError("grid must be an object")
    extra = sorted(set(grid_tree) - {"t_start", "t_end", "steps"})
    if extra:
        raise ValidationError(f"unknown grid keys: {', '.join(extra)}")
    for key in ("t_start", "t_end", "steps"):
        if key not in grid_tree:
            raise ValidationError(f"grid is missing '{key}'")
    grid = GridSpec(grid_tree["t_start"], grid_tree["t_end"], grid_tree["steps"])

    c = C_LIGHT
    constants = tree.get("constants", {})
    if not isinstance(constants, dict):
        raise ValidationError("constants must be an object")
    extra = sorted(set(constants) - {"c"})
    if extra:
        raise ValidationError(f"unknown constants: {', '.join(extra)}")
    if "c" in constants:
        c = constants["c"]
        if not (isinstance(c, (int, float)) and math.isfinite(c) and c > 0.0):
            raise ValidationError("constants.c must be a positive number")
        c = float(c)

    out_format: str | None = None
    out_path: str | None = None
    outputs = tree.get("outputs", {})
    if not isinstance(outputs, dict):
        raise ValidationError("outputs must be an object")
    extra = sorted(set(outputs) - {"format", "path"})
    if extra:
        raise ValidationError(f"unknown outputs keys: {', '.join(extra)}")
    if "format" in outputs:
        out_format = outputs["format"]
        if out_format not in ("csv", "json"):
            raise ValidationError("outputs.format must be 'csv' or 'json'")
    if "path" in outputs:
        out_path = outputs["path"]
        if not isinstance(out_path, str) or not out_path:
            raise ValidationError("outputs.path must be a non-empty string")

    return ScenarioFile(version, tag, tree["params"], grid, c, out_format, out_path)


# --- Parameter tree reader ---


class _Params:
    """Typed reader over one level of the params tree.

    Every accessor records the key it consumed; ``done()`` then rejects
    leftovers, so a typo never silently falls back to a default.
    Errors name the full JSON path of the offending field.
    """

    def __init__(self, tree: dict, path: str = "params") -> None:
        if not isinstance(tree, dict):
            raise ValidationError(f"{path} must be an object")
        self._tree = tree
        self._path = path
        self._seen: set[str] = set()

    _REQUIRED = object()

    def _get(self, key: str, default):
        self._seen.add(key)
        if key in self._tree:
            return self._tree[key]
        if default is self._REQUIRED:
            raise ValidationError(f"{self._path}.{key} is required")
        return default

    def num(
        self,
        key: str,
        default=_REQUIRED,
        *,
        positive: bool = False,
    ) -> float | None:
        val = self._get(key, default)
        if val is None:
            return None  # only reachable with default=None and key absent
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise ValidationError(f"{self._path}.{key} must be a number")
        if not math.isfinite(val):
            raise ValidationError(f"{self._path}.{key} must be finite")
        if positive and not val > 0.0:
            raise ValidationError(f"{self._path}.{key} must be > 0")
        return float(val)

    def text(self, key: str, default=_REQUIRED, *, choices: tuple[str, ...] | None = None) -> str:
        val = self._get(key, default)
        if not isinstance(val, str):
            raise ValidationError(f"{self._path}.{key} must be a string")
        if choices is not None and val not in choices:
            raise ValidationError(
                f"{self._path}.{key} must be one of: " + ", ".join(choices)
            )
        return val

    def vec3(self, key: str, default=_REQUIRED) -> Vec3:
        val = self._get(key, default)
        if isinstance(val, Vec3):
            return val
        if (
            not isinstance(val, list)
            or len(val) != 3
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in val)
        ):
            raise ValidationError(f"{self._path}.{key} must be [x, y, z] in meters")
        return Vec3(float(val[0]), float(val[1]), float(val[2]))

    def sub(self, key: str, *, required: bool = False) -> "_Params | None":
        self._seen.add(key)
        if key not in self._tree:
            if required:
                raise ValidationError(f"{self._path}.{key} is required")
            return None
        return _Params(self._tree[key], f"{self._path}.{key}")

    def done(self) -> None:
        extra = sorted(set(self._tree) - self._seen)
        if extra:
            raise ValidationError(
                f"unknown keys under {self._path}: " + ", ".join(extra)
            )


# --- Scenario kinds ---


@dataclass(frozen=True)
class _Prepared:
    """A scenario bound to its parameters, ready to sweep.

    ``row(t)`` returns (column values, warning-or-None); ``pair(t)``
    returns (closed route, oracle route) for verify, or is None when
    the kind (or this parameter combination) has no oracle mapping.
    """

    columns: tuple[str, ...]
    row: Callable[[float], tuple[tuple[float, ...], str | None]]
    pair: Callable[[float], tuple[float, float]] | None


@dataclass(frozen=True)
class _Kind:
    tag: str
    family: str
    summary: str
    required: tuple[str, ...]
    optional: tuple[str, ...]
    verify_tol: float | None  # None: verify unsupported for the kind
    build: Callable[[_Params, float], _Prepared]


def _build_acoustic(p: _Params, c: float) -> _Prepared:
    v = p.num("v", positive=True)
    v_m = p.num("v_m", 0.0)
    v_s = p.num("v_s", 0.0)
    v_o = p.num("v_o", 0.0)
    a_s = p.num("a_s", 0.0)
    f = p.num("f", positive=True)
    p.done()

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        f_obs = acoustic_shift(AcousticScenario(v, v_m, v_s + a_s * t, v_o, f))
        return (t, f_obs, f_obs - f), None

    pair = None
    if a_s == 0.0:
        v_w = max(0.0, v + v_m)
        T = 1.0 / f
        # Start the pair far enough out that neither body reaches the
        # other during the two tracked crests.
        d0 = 1000.0 + 100.0 * T * (v_w + abs(v_s) + abs(v_o))

        def pair(t: float) -> tuple[float, float]:
            closed = 1.0 / acoustic_shift(AcousticScenario(v, v_m, v_s, v_o, f))
            src = Trajectory.uniform(Vec3(-d0 - v_s * t, 0.0, 0.0), Vec3(v_s, 0.0, 0.0))
            obs = Trajectory.uniform(Vec3(-v_o * t, 0.0, 0.0), Vec3(v_o, 0.0, 0.0))
            res = simulate_crests(src, obs, None, f, 2, t, wave_speed=v_w)
            return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


def _build_circular(p: _Params, c: float) -> _Prepared:
    R = p.num("R", positive=True)
    r0 = p.num("r0", positive=True)
    omega = p.num("omega")
    f = p.num("f", positive=True)
    T = p.num("T", None, positive=True)
    if T is None:
        T = 1.0 / f
    wave_speed = p.num("wave_speed", c, positive=True)
    mode = p.text("mode", "source_on_circle")
    p.done()

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        s = circular_doppler(R, r0, omega, t, T, f, wave_speed, mode)
        return (t, s.freq_obs, s.shift), s.warning

    pair = None
    if mode == "source_on_circle":

        def pair(t: float) -> tuple[float, float]:
            closed = circular_doppler(R, r0, omega, t, T, f, wave_speed, mode).period_obs
            src = Trajectory.circular(Vec3(0.0, 0.0, 0.0), R, omega)
            obs = Trajectory.static(Vec3(-r0, 0.0, 0.0))
            res = simulate_crests(src, obs, None, 1.0 / T, 2, t, wave_speed=wave_speed)
            return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


def _build_gravitational(p: _Params, c: float) -> _Prepared:
    GM = p.num("GM", positive=True)
    r_src = p.num("r_src", positive=True)
    r_obs = p.num("r_obs", positive=True)
    f = p.num("f", positive=True)
    p.done()
    src = PotentialSpec(GM=GM, r=r_src)
    obs = PotentialSpec(GM=GM, r=r_obs)

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        f_obs = gravitational_shift(src, obs, f, c)
        return (t, f_obs, f_obs - f), None

    return _Prepared(_DOPPLER_COLUMNS, row, None)


def _build_linear_accel(p: _Params, c: float) -> _Prepared:
    r0 = p.num("r0", positive=True)
    v0 = p.num("v0", 0.0)
    a = p.num("a", 0.0)
    f = p.num("f", positive=True)
    T = p.num("T", None, positive=True)
    if T is None:
        T = 1.0 / f
    wave_speed = p.num("wave_speed", c, positive=True)
    p.done()

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        s = linear_accel_doppler(r0, v0, a, t, T, f, wave_speed)
        return (t, s.freq_obs, s.shift), s.warning

    def pair(t: float) -> tuple[float, float]:
        closed = linear_accel_doppler(r0, v0, a, t, T, f, wave_speed).period_obs
        src = Trajectory.linear_accel(Vec3(1.0, 0.0, 0.0), -r0, v0, a)
        obs = Trajectory.static(Vec3(0.0, 0.0, 0.0))
        res = simulate_crests(src, obs, None, 1.0 / T, 2, t, wave_speed=wave_speed)
        return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


def _build_quartic_tropo(p: _Params, c: float) -> _Prepared:
    N_Td = p.num("N_Td", positive=True)
    h0d = p.num("h0d", positive=True)
    N_Tw = p.num("N_Tw", positive=True)
    h0w = p.num("h0w", positive=True)
    hT = p.num("hT", 0.0)
    p.done()
    profile = TropoProfile.quartic(N_Td, h0d, N_Tw, h0w, hT)

    def row(theta: float) -> tuple[tuple[float, ...], str | None]:
        return (theta, tropo_ftheta(profile, theta, method="closed_form")), None

    def pair(theta: float) -> tuple[float, float]:
        closed = tropo_ftheta(profile, theta, method="closed_form")
        quad = tropo_ftheta(profile, theta, method="quadrature")
        return closed, quad

    return _Prepared(("t_s", "ftheta_m"), row, pair)


def _build_longitudinal(p: _Params, c: float) -> _Prepared:
    v0 = p.num("v0")
    a = p.num("a", 0.0)
    f = p.num("f", positive=True)
    p.done()

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        f_obs = longitudinal_shift(v0 + a * t, f, c)
        return (t, f_obs, f_obs - f), None

    pair = None
    if a == 0.0:
        T = 1.0 / f
        d0 = 1.0e4 + abs(v0) * (10.0 * T + 1.0)

        def pair(t: float) -> tuple[float, float]:
            closed = 1.0 / longitudinal_shift(v0, f, c)
            src = Trajectory.uniform(Vec3(d0 - v0 * t, 0.0, 0.0), Vec3(v0, 0.0, 0.0))
            obs = Trajectory.static(Vec3(0.0, 0.0, 0.0))
            dil = DilationSpec(source_speed=lambda _t: abs(v0), c=c)
            res = simulate_crests(src, obs, None, f, 2, t, wave_speed=c, dilation=dil)
            return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


def _iono_from(p: _Params | None) -> IonoProfile | None:
    if p is None:
        return None
    model = p.text("model", choices=("chapman", "exponential"))
    if model == "chapman":
        profile = IonoProfile.chapman(
            p.num("Nmax", positive=True),
            p.num("hmax", positive=True),
            p.num("H", positive=True),
        )
    else:
        profile = IonoProfile.exponential(
            p.num("N0", positive=True),
            p.num("alpha", positive=True),
            p.num("h0", positive=True),
        )
    p.done()
    return profile


def _tropo_from(p: _Params | None) -> TropoProfile | None:
    if p is None:
        return None
    model = p.text("model", choices=("quadratic", "quartic"))
    if model == "quadratic":
        profile = TropoProfile.quadratic(
            p.num("N_T", positive=True),
            p.num("h0", positive=True),
            p.num("hT", 0.0),
        )
    else:
        profile = TropoProfile.quartic(
            p.num("N_Td", positive=True),
            p.num("h0d", positive=True),
            p.num("N_Tw", positive=True),
            p.num("h0w", positive=True),
            p.num("hT", 0.0),
        )
    p.done()
    return profile


def _pointwise_n(scn: SatNavScenario) -> Callable[[Vec3, float], float]:
    """n(point, t) over the scenario profiles at the primary carrier.

    Heights clamp to the surface: a ground station's norm can round
    half an ulp below earth.R, and a vacuum step there would make the
    crest tracker's chord integral flap by the whole shell excess.
    """

    earth = scn.earth
    comps = tuple(_tropo_components(scn.tropo, earth)) if scn.tropo is not None else ()
    power = 2 if (scn.tropo is not None and scn.tropo.model == "quadratic") else 4
    iono = scn.iono
    f = scn.f1
    iono_ceiling = earth.R + IONO_TOP_ALTITUDE

    def n_at(point: Vec3, t: float) -> float:
        r = max(earth.R, point.norm())
        n = 1.0
        for N_x, r_ceil, thick in comps:
            if r < r_ceil:
                n += 1e-6 * N_x * ((r_ceil - r) / thick) ** power
        if iono is not None and r <= iono_ceiling:
            h = r - earth.R
            if iono.model != "exponential" or h >= iono.h0:
                n -= KAPPA_IONO * profile_Ne(iono, h) / (2.0 * f * f)
        return n

    return n_at


def _build_satnav(p: _Params, c: float) -> _Prepared:
    orbit = p.sub("orbit", required=True)
    radius = orbit.num("radius", positive=True)
    omega = orbit.num("omega")
    phase0 = orbit.num("phase0", 0.0)
    orbit.done()
    station = p.sub("station", required=True)
    r_station = station.vec3("r")
    v_station = station.vec3("v", Vec3(0.0, 0.0, 0.0))
    station.done()
    f1 = p.num("f1", positive=True)
    f2 = p.num("f2", positive=True)
    T_c = p.num("T_c", 0.02, positive=True)
    earth_sub = p.sub("earth")
    if earth_sub is None:
        earth = EARTH
    else:
        earth = EarthModel(
            R=earth_sub.num("R", EARTH.R, positive=True),
            omega_e=earth_sub.num("omega_e", EARTH.omega_e),
            GM=earth_sub.num("GM", EARTH.GM, positive=True),
        )
        earth_sub.done()
    iono = _iono_from(p.sub("iono"))
    tropo = _tropo_from(p.sub("tropo"))
    p.done()

    scn = SatNavScenario(
        satellite=Trajectory.circular(Vec3(0.0, 0.0, 0.0), radius, omega, phase0),
        r_station=r_station,
        v_station=v_station,
        f1=f1,
        f2=f2,
        earth=earth,
        iono=iono,
        tropo=tropo,
    )

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        b = satnav_doppler_budget(scn, t, T_c, c)
        return (
            t,
            f1 + b.total,
            b.kinematic,
            b.I_G,
            b.I_S,
            b.I_T,
            b.I_I,
            b.sagnac,
            b.total,
        ), None

    pair = None
    if v_station.norm() == 0.0 and r_station.y == 0.0:
        # The crest tracker needs the rotating station as a Trajectory,
        # which a geocentric circle provides only for stations in the
        # x-z plane with no extra surface velocity.
        ring = math.hypot(r_station.x, 0.0)
        if ring > 0.0:
            base_phase = 0.0 if r_station.x > 0.0 else math.pi
            station_traj = Trajectory.circular(
                Vec3(0.0, 0.0, r_station.z), ring, earth.omega_e, base_phase
            )
            field = _pointwise_n(scn) if (iono is not None or tropo is not None) else None

            def pair(t: float) -> tuple[float, float]:
                closed = satnav_period_ratio(scn, t, T_c, c)[0]
                res = simulate_crests(
                    scn.satellite, station_traj, field, 1.0 / T_c, 2, t, wave_speed=c
                )
                return closed, T_c / res.periods[0]

    return _Prepared(_BUDGET_COLUMNS, row, pair)


def _build_static(p: _Params, c: float) -> _Prepared:
    d = p.num("d", 1000.0, positive=True)
    f = p.num("f", positive=True)
    wave_speed = p.num("wave_speed", c, positive=True)
    p.done()
    src = Trajectory.static(Vec3(0.0, 0.0, 0.0))
    obs = Trajectory.static(Vec3(d, 0.0, 0.0))
    T = 1.0 / f

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        s = two_event_period(src, obs, t, T, wave_speed)
        return (t, s.freq_obs, s.shift), s.warning

    def pair(t: float) -> tuple[float, float]:
        closed = two_event_period(src, obs, t, T, wave_speed).period_obs
        res = simulate_crests(src, obs, None, f, 2, t, wave_speed=wave_speed)
        return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


def _build_tec(p: _Params, c: float) -> _Prepared:
    path = p.text("vtec_csv")
    f = p.num("f", positive=True)
    zenith = p.num("zenith", 0.0)
    shell = p.num("shell_height", SHELL_HEIGHT_IONO, positive=True)
    p.done()
    try:
        samples = read_vtec_csv(path)
    except OSError as exc:
        raise ValidationError(f"params.vtec_csv: cannot read {path!r}: {exc}") from exc
    if len(samples) < 2:
        raise ValidationError("params.vtec_csv needs at least 2 samples")
    stec = tuple((t, vtec_to_stec(v, zenith, shell)) for t, v in samples)
    times = [t for t, _ in stec]

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        if not times[0] <= t <= times[-1]:
            raise DomainError(
                f"t={t!r} outside the TEC series [{times[0]!r}, {times[-1]!r}]"
            )
        i = min(bisect_right(times, t), len(times) - 1)
        t1, s1 = stec[i - 1]
        t2, s2 = stec[i]
        shift = tec_doppler((s2 - s1) / (t2 - t1), f, c)
        return (t, f + shift, shift), None

    return _Prepared(_DOPPLER_COLUMNS, row, None)


def _uniform_from(p: _Params) -> Trajectory:
    r0 = p.vec3("r0")
    v = p.vec3("v", Vec3(0.0, 0.0, 0.0))
    p.done()
    return Trajectory.uniform(r0, v)


def _build_uniform(p: _Params, c: float) -> _Prepared:
    src = _uniform_from(p.sub("src", required=True))
    obs = _uniform_from(p.sub("obs", required=True))
    f = p.num("f", positive=True)
    wave_speed = p.num("wave_speed", c, positive=True)
    p.done()
    T = 1.0 / f

    def row(t: float) -> tuple[tuple[float, ...], str | None]:
        s = two_event_period(src, obs, t, T, wave_speed)
        return (t, s.freq_obs, s.shift), s.warning

    def pair(t: float) -> tuple[float, float]:
        closed = two_event_period(src, obs, t, T, wave_speed).period_obs
        res = simulate_crests(src, obs, None, f, 2, t, wave_speed=wave_speed)
        return closed, res.periods[0]

    return _Prepared(_DOPPLER_COLUMNS, row, pair)


_REGISTRY: dict[str, _Kind] = {
    kind.tag: kind
    for kind in (
        _Kind(
            "acoustic-shift",
            "acoustic",
            "received frequency for line-of-sight motion in a flowing medium; "
            "v_s may ramp as v_s + a_s*t",
            ("v", "f"),
            ("v_m", "v_s", "v_o", "a_s"),
            1e-9,
            _build_acoustic,
        ),
        _Kind(
            "circular-doppler",
            "classical",
            "crest-pair Doppler for a body on a circle past an in-plane "
            "static party",
            ("R", "r0", "omega", "f"),
            ("T", "wave_speed", "mode"),
            1e-9,
            _build_circular,
        ),
        _Kind(
            "gravitational-shift",
            "gravity_accel",
            "potential-difference shift between two radii of one body "
            "(constant over the grid)",
            ("GM", "r_src", "r_obs", "f"),
            (),
            None,
            _build_gravitational,
        ),
        _Kind(
            "linear-accel",
            "classical",
            "crest-pair Doppler for 1-D uniformly accelerated motion past "
            "a static party",
            ("r0", "f"),
            ("v0", "a", "T", "wave_speed"),
            1e-9,
            _build_linear_accel,
        ),
        _Kind(
            "quartic-troposphere",
            "atmosphere",
            "tropospheric elevation factor f(theta_E) in meters; the grid "
            "sweeps elevation in radians",
            ("N_Td", "h0d", "N_Tw", "h0w"),
            ("hT",),
            1e-3,
            _build_quartic_tropo,
        ),
        _Kind(
            "relativistic-longitudinal",
            "relativistic",
            "exact longitudinal shift for relative speed v0 + a*t, "
            "receding positive",
            ("v0", "f"),
            ("a",),
            1e-9,
            _build_longitudinal,
        ),
        _Kind(
            "satnav-budget",
            "applications",
            "per-epoch satellite Doppler budget columns for a circular "
            "orbit over a rotating station",
            ("orbit", "station", "f1", "f2"),
            ("T_c", "earth", "iono", "tropo"),
            1e-9,
            _build_satnav,
        ),
        _Kind(
            "static",
            "classical",
            "sanity kind: static endpoints, zero shift at any separation",
            ("f",),
            ("d", "wave_speed"),
            0.0,
            _build_static,
        ),
        _Kind(
            "tec-doppler",
            "atmosphere",
            "ionospheric shift from an ingested vertical-TEC CSV, mapped "
            "to slant and differenced per bracket",
            ("vtec_csv", "f"),
            ("zenith", "shell_height"),
            None,
            _build_tec,
        ),
        _Kind(
            "uniform-motion",
            "classical",
            "crest-pair Doppler between two bodies in uniform 3-D motion",
            ("src", "obs", "f"),
            ("wave_speed",),
            1e-9,
            _build_uniform,
        ),
    )
}


# --- Evaluation and output ---


def _sweep(fn, points: list[float], threads: int, tag: str) -> list:
    def guarded(t: float):
        try:
            return fn(t)
        except (DomainError, NumericError) as exc:
            raise type(exc)(
                f"scenario '{tag}' at grid point t={t!r}: {exc}"
            ) from exc

    if threads <= 1:
        return [guarded(t) for t in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(guarded, points))


def _format_value(x: float) -> str:
    return format(float(x), ".17g")


def _write_rows(
    path: str, fmt: str, tag: str, columns: tuple[str, ...], rows: list[tuple]
) -> None:
    try:
        if fmt == "csv":
            lines = [",".join(columns)]
            lines.extend(",".join(_format_value(v) for v in row) for row in rows)
            payload = "\n".join(lines) + "\n"
            with open(path, "w", encoding="utf-8", newline="") as handle:
                handle.write(payload)
        else:
            doc = {
                "scenario": tag,
                "columns": list(columns),
                "rows": [[float(v) for v in row] for row in rows],
            }
            with open(path, "w", encoding="utf-8", newline="") as handle:
                json.dump(doc, handle, indent=2)
                handle.write("\n")
    except OSError as exc:
        raise ValidationError(f"cannot write output file: {exc}") from exc


def run(
    scenario_path: str,
    *,
    output: str | None = None,
    fmt: str | None = None,
    threads: int = 1,
) -> RunReport:
    """Evaluate a scenario over its grid and write the output file."""

    if threads < 1:
        raise ValidationError("threads must be >= 1")
    scn = load_scenario(scenario_path)
    kind = _REGISTRY[scn.scenario]
    prep = kind.build(_Params(scn.params), scn.c)
    out_path = output or scn.out_path
    if not out_path:
        raise ValidationError("no output path: set outputs.path or pass --output")
    out_fmt = fmt or scn.out_format or "csv"

    started = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = _sweep(prep.row, scn.grid.points(), threads, scn.scenario)
    elapsed = time.perf_counter() - started

    rows = [values for values, _ in results]
    surfaced: list[str] = []
    for values, note in results:
        if note and note not in surfaced:
            surfaced.append(note)
    for w in caught:
        note = str(w.message)
        if note not in surfaced:
            surfaced.append(note)

    _write_rows(out_path, out_fmt, scn.scenario, prep.columns, rows)
    return RunReport(len(rows), tuple(surfaced), elapsed)


def verify(
    scenario_path: str,
    *,
    threads: int = 1,
    perturb_rel: float = 0.0,
) -> VerifyReport:
    """Run the closed-form and oracle routes and compare them per point.

    ``perturb_rel`` multiplies the closed-form route by (1 + that), a
    deliberate mutation that proves the comparison can fail; leave it
    at 0 for a real verification.
    """

    if threads < 1:
        raise ValidationError("threads must be >= 1")
    if not math.isfinite(perturb_rel):
        raise ValidationError("perturb_rel must be finite")
    scn = load_scenario(scenario_path)
    kind = _REGISTRY[scn.scenario]
    prep = kind.build(_Params(scn.params), scn.c)
    if kind.verify_tol is None or prep.pair is None:
        raise ValidationError(
            f"scenario '{scn.scenario}' has no oracle mapping for verify "
            "with these parameters"
        )

    pairs = _sweep(prep.pair, scn.grid.points(), threads, scn.scenario)
    rows: list[tuple[float, float, float, float]] = []
    worst = 0.0
    for t, (closed, oracle) in zip(scn.grid.points(), pairs):
        closed = closed * (1.0 + perturb_rel)
        if closed == oracle:
            dev = 0.0
        elif oracle == 0.0:
            dev = math.inf
        else:
            dev = abs(closed - oracle) / abs(oracle)
        worst = max(worst, dev)
        rows.append((t, closed, oracle, dev))
    return VerifyReport(tuple(rows), worst, kind.verify_tol, worst <= kind.verify_tol)


def list_scenarios() -> str:
    """One line per registered scenario kind, alphabetical by tag."""

    lines = []
    for tag in sorted(_REGISTRY):
        kind = _REGISTRY[tag]
        params = ", ".join(kind.required)
        if kind.optional:
            params += " [" + ", ".join(kind.optional) + "]"
        checker = "yes" if kind.verify_tol is not None else "no"
        lines.append(
            f"{tag:<26} family={kind.family:<13} verify={checker:<4} "
            f"params: {params} -- {kind.summary}"
        )
    return "\n".join(lines)


# --- Command line ---


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dopplerkit",
        description="Run Doppler scenario files over a grid.",
        epilog=(
            "exit codes: 0 success, 1 verify deviation beyond tolerance, "
            "2 validation error, 3 numeric error"
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    run_p = sub.add_parser("run", help="evaluate a scenario and write CSV/JSON")
    run_p.add_argument("scenario", help="path to a JSON scenario file")
    run_p.add_argument("--output", help="output path (overrides outputs.path)")
    run_p.add_argument(
        "--format",
        choices=("csv", "json"),
        dest="fmt",
        help="output format (overrides outputs.format)",
    )
    run_p.add_argument("--threads", type=int, default=1, help="grid worker threads")

    ver_p = sub.add_parser("verify", help="compare closed forms against the oracle")
    ver_p.add_argument("scenario", help="path to a JSON scenario file")
    ver_p.add_argument("--threads", type=int, default=1, help="grid worker threads")
    ver_p.add_argument(
        "--perturb",
        type=float,
        default=0.0,
        metavar="REL",
        help=(
            "multiply the closed-form route by (1+REL) as a self-test of "
            "the comparison (default 0)"
        ),
    )

    sub.add_parser("list-scenarios", help="print the scenario registry")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.verb == "run":
            report = run(
                args.scenario,
                output=args.output,
                fmt=args.fmt,
                threads=args.threads,
            )
            target = args.output or load_scenario(args.scenario).out_path
            print(f"wrote {report.rows} rows to {target}")
            for note in report.warnings:
                print(f"warning: {note}")
            print(f"elapsed {report.elapsed_s:.3f} s")
            return 0
        if args.verb == "verify":
            report = verify(
                args.scenario, threads=args.threads, perturb_rel=args.perturb
            )
            print(f"{'t':>24} {'closed':>26} {'oracle':>26} {'rel_dev':>12}")
            for t, closed, oracle, dev in report.rows:
                print(
                    f"{_format_value(t):>24} {_format_value(closed):>26} "
                    f"{_format_value(oracle):>26} {dev:>12.3e}"
                )
            status = "PASS" if report.passed else "FAIL"
            print(
                f"max relative deviation {report.max_deviation:.3e} "
                f"(tolerance {report.tolerance:.1e}): {status}"
            )
            return 0 if report.passed else 1
        print(list_scenarios())
        return 0
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
