"""Tests for ionospheric and tropospheric Doppler operations."""

import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from dopplerkit import (
    C_LIGHT,
    EARTH,
    DomainError,
    IonoProfile,
    KAPPA_IONO,
    LowElevationWarning,
    NumericError,
    PhasePath,
    TropoProfile,
    ValidationError,
    Vec3,
    appleton_hartree_n2,
    elevation_rate,
    flat_iono_doppler,
    phase_path_doppler,
    profile_Ne,
    read_vtec_csv,
    simplified_iono_n,
    tec_doppler,
    tec_rate,
    tropo_doppler,
    tropo_ftheta,
    tropo_refractivity,
    vtec_to_stec,
)

GPS_RS = 26_560_000.0  # m
GPS_OMEGA = 2.0 * math.pi / 43_082.0  # rad/s


# --- Profile types ---


class TestIonoProfile:
    def test_chapman_peak(self):
        profile = IonoProfile.chapman(Nmax=1e12, hmax=300e3, H=60e3)
        assert profile_Ne(profile, 300e3) == 1e12

    def test_chapman_one_scale_height_up(self):
        profile = IonoProfile.chapman(Nmax=1e12, hmax=300e3, H=60e3)
        factor = math.exp(0.5 * (1.0 - 1.0 - math.exp(-1.0)))
        assert profile_Ne(profile, 360e3) == pytest.approx(factor * 1e12, rel=1e-12)
        assert profile_Ne(profile, 360e3) == pytest.approx(0.8320e12, rel=1e-4)

    def test_flat_linear_empty_below_base(self):
        profile = IonoProfile.flat_linear(alpha=1e9, h0=100e3)
        assert profile_Ne(profile, 50e3) == 0.0
        assert profile_Ne(profile, 100e3) == 0.0
        assert profile_Ne(profile, 101e3) == pytest.approx(1e9 * 1e3, rel=1e-15)

    def test_exponential_profile(self):
        profile = IonoProfile.exponential(N0=5e11, alpha=1e-5, h0=90e3)
        assert profile_Ne(profile, 90e3) == 5e11
        assert profile_Ne(profile, 40e3) == 0.0
        expected = 5e11 * math.exp(-1e-5 * 60e3)
        assert profile_Ne(profile, 150e3) == pytest.approx(expected, rel=1e-15)

    def test_constructor_validation(self):
        with pytest.raises(ValidationError):
            IonoProfile(model="parabolic")
        with pytest.raises(ValidationError):
            IonoProfile.chapman(Nmax=-1e11, hmax=300e3, H=60e3)
        with pytest.raises(ValidationError):
            IonoProfile.chapman(Nmax=1e12, hmax=300e3, H=0.0)
        with pytest.raises(ValidationError):
            IonoProfile.exponential(N0=1e11, alpha=float("nan"), h0=90e3)
        with pytest.raises(ValidationError):
            IonoProfile(model="flat_linear", h0=100e3)  # missing slope

    def test_altitude_validation(self):
        profile = IonoProfile.flat_linear(alpha=1e9, h0=100e3)
        with pytest.raises(ValidationError):
            profile_Ne(profile, -1.0)


class TestTropoProfile:
    def test_ceiling_must_clear_station(self):
        with pytest.raises(ValidationError):
            TropoProfile.quadratic(N_T=315.0, h0=100.0, hT=200.0)
        with pytest.raises(ValidationError):
            TropoProfile.quartic(N_Td=315.0, h0d=40e3, N_Tw=50.0, h0w=100.0, hT=200.0)

    def test_negative_refractivity_rejected(self):
        with pytest.raises(ValidationError):
            TropoProfile.quadratic(N_T=-1.0, h0=40e3)

    def test_measured_validation(self):
        with pytest.raises(ValidationError):
            TropoProfile.measured(P=1013.0, e=10.0, T_K=0.0)
        profile = TropoProfile.measured(P=1013.0, e=10.0, T_K=288.0)
        assert profile.model == "measured"


# --- Appleton-Hartree ---


class TestAppletonHartree:
    def test_no_field_reduces_to_one_minus_x(self):
        for x in (0.0, 0.1, 0.5, 0.9, 1.5):
            assert appleton_hartree_n2(x, 0.0, 0.0, 0.7) == 1.0 - x

    def test_zero_plasma_gives_unity(self):
        assert appleton_hartree_n2(0.0, 0.2, 0.1, 0.5) == 1.0

    @staticmethod
    def _residual(n2, x, y, z, theta):
        # rationalized form: ((1-n2) A - X)^2 = (1-n2)^2 B^2 with
        # A = 1 - jZ - half, B^2 = half^2 + Y^2 cos^2(theta)
        inner = complex(1.0 - x, -z)
        half = (y * math.sin(theta)) ** 2 / (2.0 * inner)
        a = complex(1.0, -z) - half
        b2 = half * half + (y * math.cos(theta)) ** 2
        lhs = ((1.0 - n2) * a - x) ** 2
        return abs(lhs - (1.0 - n2) ** 2 * b2)

    def test_roots_differ_and_satisfy_equation(self):
        theta = math.radians(45.0)
        ordinary = appleton_hartree_n2(0.5, 0.1, 0.0, theta, "ordinary")
        extraordinary = appleton_hartree_n2(0.5, 0.1, 0.0, theta, "extraordinary")
        assert abs(ordinary - extraordinary) > 1e-3
        assert self._residual(ordinary, 0.5, 0.1, 0.0, theta) < 1e-12
        assert self._residual(extraordinary, 0.5, 0.1, 0.0, theta) < 1e-12

    def test_collisional_root_is_complex(self):
        n2 = appleton_hartree_n2(0.3, 0.1, 0.05, 0.4)
        assert n2.imag != 0.0
        assert self._residual(n2, 0.3, 0.1, 0.05, 0.4) < 1e-12

    def test_matches_simplified_sqrt_square(self):
        ne, f = 1e12, 1.5e9
        x = KAPPA_IONO * ne / f**2
        n2 = appleton_hartree_n2(x, 0.0, 0.0, 0.3)
        assert abs(n2 - simplified_iono_n(ne, f, "sqrt") ** 2) < 1e-14

    def test_vanishing_denominator_raises(self):
        # transverse propagation with Y^2 = 1 - X zeroes the
        # extraordinary denominator exactly
        with pytest.raises(NumericError):
            appleton_hartree_n2(0.75, 0.5, 0.0, 0.5 * math.pi, "extraordinary")

    def test_plasma_resonance_inner_denominator_raises(self):
        with pytest.raises(NumericError):
            appleton_hartree_n2(1.0, 0.2, 0.0, 0.5 * math.pi, "ordinary")

    def test_mode_validation(self):
        with pytest.raises(ValidationError):
            appleton_hartree_n2(0.1, 0.1, 0.0, 0.3, "sideways")
        with pytest.raises(ValidationError):
            appleton_hartree_n2(float("inf"), 0.0, 0.0, 0.3)


class TestSimplifiedIonoN:
    def test_vacuum(self):
        assert simplified_iono_n(0.0, 1.5e9, "sqrt") == 1.0
        assert simplified_iono_n(0.0, 1.5e9, "linear") == 1.0

    def test_linear_depression_pinned(self):
        n = simplified_iono_n(1e12, 1.5e9, "linear")
        assert 1.0 - n == pytest.approx(KAPPA_IONO * 1e12 / (2.0 * 1.5e9**2), rel=1e-12)
        assert 1.0 - n == pytest.approx(1.791e-5, rel=1e-3)

    def test_sqrt_branch_domain(self):
        f = 1.0e6
        ne_cut = f * f / KAPPA_IONO
        with pytest.raises(DomainError):
            simplified_iono_n(ne_cut, f, "sqrt")
        # linear branch keeps going through the cutoff
        assert simplified_iono_n(ne_cut, f, "linear") == 0.5

    @given(x=st.floats(1e-6, 0.01))
    @settings(max_examples=200, deadline=None)
    def test_branch_gap_obeys_remainder_bound(self, x):
        # Lagrange remainder of sqrt(1-x) about 0: |gap| <= x^2/(8 (1-x)^1.5);
        # the leading-order x^2/8 alone is exceeded by the x^3/16 tail.
        # Slack of a few ulps of 1.0 covers quantization of the two
        # indices, which both sit next to 1.
        f = 1.0e9
        ne = x * f * f / KAPPA_IONO
        gap = abs(
            simplified_iono_n(ne, f, "sqrt") - simplified_iono_n(ne, f, "linear")
        )
        assert gap <= x * x / (8.0 * (1.0 - x) ** 1.5) + 5e-16

    def test_order_validation(self):
        with pytest.raises(ValidationError):
            simplified_iono_n(1e12, 1.5e9, "quadratic")
        with pytest.raises(ValidationError):
            simplified_iono_n(-1.0, 1.5e9)
        with pytest.raises(ValidationError):
            simplified_iono_n(1e12, 0.0)


# --- Phase-path Doppler ---


def _straight_path(n_values, t, length=1000.0):
    step = length / (len(n_values) - 1)
    return PhasePath(
        tuple((Vec3(i * step, 0.0, 0.0), n) for i, n in enumerate(n_values)), t
    )


class TestPhasePathDoppler:
    def test_static_medium_no_shift(self):
        p1 = _straight_path((1.0002, 1.0005, 1.0003), 0.0)
        p2 = _straight_path((1.0002, 1.0005, 1.0003), 10.0)
        assert phase_path_doppler(p1, p2, 1e9) == 0.0

    def test_index_switch_matches_ratio_form(self):
        # medium swaps n1 -> n2 between consecutive crests, with
        # r (n2 - n1) / lambda = 5e-4; the ratio form f/(1 + 5e-4)
        # agrees with the rate form to second order in the step
        f = 1.0e9
        r = 1000.0
        dn = 5e-4 * (C_LIGHT / f) / r
        p1 = _straight_path((1.0, 1.0), 0.0, length=r)
        p2 = _straight_path((1.0 + dn, 1.0 + dn), 1.0 / f, length=r)
        observed = f + phase_path_doppler(p1, p2, f)
        assert observed == pytest.approx(f / 1.0005, rel=1e-6)

    def test_partition_additivity(self):
        n_a = (1.0001, 1.0004, 1.0002)
        n_b = (1.0002, 1.0003, 1.0006, 1.0001)
        f = 2.0e9
        full_1 = _straight_path(n_a + n_b[1:], 0.0, length=6000.0)
        full_2 = _straight_path(tuple(n + 1e-5 for n in n_a + n_b[1:]), 5.0, length=6000.0)
        whole = phase_path_doppler(full_1, full_2, f)
        seg_a1 = PhasePath(full_1.samples[:3], 0.0)
        seg_b1 = PhasePath(full_1.samples[2:], 0.0)
        seg_a2 = PhasePath(full_2.samples[:3], 5.0)
        seg_b2 = PhasePath(full_2.samples[2:], 5.0)
        parts = phase_path_doppler(seg_a1, seg_a2, f) + phase_path_doppler(
            seg_b1, seg_b2, f
        )
        # each segment integral is rounded once before the epochs are
        # differenced, so the km-scale magnitudes leave a ~1e-11 floor
        assert parts == pytest.approx(whole, rel=1e-9)

    def test_direction_independent(self):
        p1 = _straight_path((1.0, 1.0004, 1.0001, 1.0003), 0.0)
        p2 = _straight_path((1.0001, 1.0002, 1.0005, 1.0002), 2.0)
        forward = phase_path_doppler(p1, p2, 1e9)
        p1r = PhasePath(tuple(reversed(p1.samples)), p1.t)
        p2r = PhasePath(tuple(reversed(p2.samples)), p2.t)
        assert phase_path_doppler(p1r, p2r, 1e9) == forward

    def test_identical_timestamps_rejected(self):
        p1 = _straight_path((1.0, 1.0), 3.0)
        p2 = _straight_path((1.0001, 1.0001), 3.0)
        with pytest.raises(DomainError):
            phase_path_doppler(p1, p2, 1e9)

    def test_path_validation(self):
        with pytest.raises(ValidationError):
            PhasePath(((Vec3.zero(), 1.0),), 0.0)
        with pytest.raises(ValidationError):
            PhasePath(((Vec3.zero(), 1.0), (Vec3(1, 0, 0), -0.1)), 0.0)
        with pytest.raises(ValidationError):
            PhasePath((((0.0, 0.0, 0.0), 1.0), (Vec3(1, 0, 0), 1.0)), 0.0)
        good = _straight_path((1.0, 1.0), 0.0)
        with pytest.raises(ValidationError):
            phase_path_doppler(good, "not a path", 1e9)
        with pytest.raises(ValidationError):
            phase_path_doppler(good, _straight_path((1.0, 1.0), 1.0), -1e9)


# --- Flat-layer sky-wave model ---


def _skywave_hop(theta, f, alpha, h0, m_points=6000):
    """Sample the up-and-down ray of the linear slab at launch elevation
    theta: straight to the base, mirror-symmetric arc above it."""
    s, ct = math.sin(theta), math.cos(theta)
    beta = alpha * KAPPA_IONO / f**2  # 1/m
    x_apex = h0 * ct / s + 2.0 / beta * ct * s
    points = [Vec3(0.0, 0.0, 0.0)]
    for k in range(m_points + 1):  # ascent, uniform in the exit cosine
        v = s * (1.0 - k / m_points)
        x = h0 * ct / s + 2.0 / beta * ct * (s - v)
        points.append(Vec3(x, 0.0, h0 + (s * s - v * v) / beta))
    for k in range(1, m_points + 1):  # descent, mirrored
        v = s * k / m_points
        x = h0 * ct / s + 2.0 / beta * ct * (s - v)
        points.append(Vec3(2.0 * x_apex - x, 0.0, h0 + (s * s - v * v) / beta))
    points.append(Vec3(2.0 * x_apex, 0.0, 0.0))
    return points


def _slab_path(points, t, f, alpha, h0):
    samples = []
    for p in points:
        ne = alpha * (p.z - h0) if p.z > h0 else 0.0
        samples.append((p, simplified_iono_n(ne, f, "linear")))
    return PhasePath(tuple(samples), t)


class TestFlatIonoDoppler:
    def test_zero_elevation_returns_zero(self):
        assert flat_iono_doppler(0.0, 1.5e9, Vz=10.0) == 0.0

    def test_vertical_incidence(self):
        f, vz = 1.5e9, 10.0
        assert flat_iono_doppler(0.5 * math.pi, f, Vz=vz) == -f * vz / C_LIGHT

    def test_rising_base_redshifts(self):
        shift = flat_iono_doppler(math.radians(30.0), 1.5e9, Vz=10.0)
        assert shift < 0.0
        assert shift == pytest.approx(-45.630548, rel=1e-6)

    def test_linear_in_lift_rate(self):
        theta, f = math.radians(40.0), 1.2e9
        one = flat_iono_doppler(theta, f, Vz=5.0)
        assert flat_iono_doppler(theta, f, Vz=-5.0) == -one
        assert flat_iono_doppler(theta, f, Vz=15.0) == pytest.approx(3.0 * one, rel=1e-15)

    def test_matches_phase_path_oracle(self):
        # frozen hop geometry, base lifted by Vz dt between the epochs;
        # the rate of the trapezoidal phase integral must reproduce the
        # closed form to discretization accuracy
        theta = math.radians(30.0)
        f, vz, h0, alpha = 1.5e9, 10.0, 200e3, 7e9
        dt = 1.0
        points = _skywave_hop(theta, f, alpha, h0)
        p1 = _slab_path(points, 0.0, f, alpha, h0)
        p2 = _slab_path(points, dt, f, alpha, h0 + vz * dt)
        oracle = phase_path_doppler(p1, p2, f)
        closed = flat_iono_doppler(theta, f, Vz=vz)
        assert closed == pytest.approx(oracle, rel=5e-4)

    def test_slope_variant_matches_printed_grouping(self):
        # the implementation folds sin(theta) through the bracket; the
        # original grouping with cot(theta) must agree away from zenith
        theta, f, alpha, h0, rate = math.radians(30.0), 1.5e9, 7e9, 200e3, 1.5e-4
        s, ct = math.sin(theta), math.cos(theta)
        d_const = 2.0 * (h0 * ct / s + 2.0 * f**2 / (alpha * KAPPA_IONO) * ct * s)
        printed = (
            -(f / C_LIGHT)
            * s
            * (d_const / (3.0 * ct * ct) - 8.0 * f**2 * s * ct / (3.0 * alpha * KAPPA_IONO))
            * rate
        )
        value = flat_iono_doppler(
            theta, f, "alpha_varying", alpha=alpha, h0=h0, dThetaE_dt=rate
        )
        assert value == pytest.approx(printed, rel=1e-12)

    def test_slope_variant_grazing_limit(self):
        # sin(theta) * cot(theta) -> 1 leaves the 2 h0 / 3 lever arm
        f, h0, rate = 1.5e9, 200e3, 1e-4
        value = flat_iono_doppler(
            0.0, f, "alpha_varying", alpha=7e9, h0=h0, dThetaE_dt=rate
        )
        assert value == pytest.approx(-(f / C_LIGHT) * (2.0 / 3.0) * h0 * rate, rel=1e-12)

    def test_slope_variant_zenith_degenerates(self):
        with pytest.raises(DomainError):
            flat_iono_doppler(
                0.5 * math.pi, 1.5e9, "alpha_varying", alpha=7e9, h0=200e3, dThetaE_dt=1e-4
            )

    def test_variant_validation(self):
        with pytest.raises(ValidationError):
            flat_iono_doppler(0.3, 1.5e9, "both_varying", Vz=1.0)
        with pytest.raises(ValidationError):
            flat_iono_doppler(0.3, 1.5e9)  # Vz missing
        with pytest.raises(ValidationError):
            flat_iono_doppler(0.3, 1.5e9, "alpha_varying", alpha=7e9, h0=200e3)
        with pytest.raises(ValidationError):
            flat_iono_doppler(0.3, 1.5e9, "alpha_varying", alpha=0.0, h0=2e5, dThetaE_dt=1e-4)
        with pytest.raises(ValidationError):
            flat_iono_doppler(-0.1, 1.5e9, Vz=10.0)
        with pytest.raises(ValidationError):
            flat_iono_doppler(2.0, 1.5e9, Vz=10.0)


# --- TEC operations ---


class TestTecDoppler:
    def test_static_content(self):
        assert tec_doppler(0.0, 1.5e9) == 0.0

    def test_pinned_rate(self):
        value = tec_doppler(1e14, 1.5e9)
        assert value == pytest.approx(KAPPA_IONO * 1e14 / (2.0 * 1.5e9 * C_LIGHT), rel=1e-15)
        assert value == pytest.approx(8.96e-3, rel=1e-3)

    def test_growing_content_blueshifts(self):
        assert tec_doppler(1e13, 1.5e9) > 0.0

    @given(rate=st.floats(-1e15, 1e15), scale=st.floats(0.1, 10.0))
    @settings(max_examples=100, deadline=None)
    def test_linear_in_rate_inverse_in_frequency(self, rate, scale):
        f = 1.5e9
        base = tec_doppler(rate, f)
        assert tec_doppler(rate * scale, f) == pytest.approx(base * scale, rel=1e-12, abs=1e-30)
        assert tec_doppler(rate, f * scale) == pytest.approx(base / scale, rel=1e-12, abs=1e-30)

    def test_matches_phase_path_on_synthetic_column(self):
        # vertical column through a Chapman layer whose peak density
        # grows 50% over ten seconds; the trapezoidal TEC rate pushed
        # through the closed form must reproduce the phase-path rate up
        # to the cancellation floor of the 800 km phase integrals
        f = 1.5e9
        heights = [i * 2e3 for i in range(401)]  # 0..800 km
        times = (0.0, 10.0)
        peaks = (1e12, 1.5e12)
        paths = []
        tecs = []
        for t, nmax in zip(times, peaks):
            profile = IonoProfile.chapman(Nmax=nmax, hmax=350e3, H=65e3)
            dens = [profile_Ne(profile, h) for h in heights]
            samples = tuple(
                (Vec3(0.0, 0.0, h), simplified_iono_n(ne, f, "linear"))
                for h, ne in zip(heights, dens)
            )
            paths.append(PhasePath(samples, t))
            tecs.append(
                math.fsum(
                    0.5 * (dens[i] + dens[i + 1]) * (heights[i + 1] - heights[i])
                    for i in range(len(heights) - 1)
                )
            )
        oracle = phase_path_doppler(paths[0], paths[1], f)
        rate = (tecs[1] - tecs[0]) / (times[1] - times[0])
        assert tec_doppler(rate, f) == pytest.approx(oracle, rel=1e-9)

    def test_validation(self):
        with pytest.raises(ValidationError):
            tec_doppler(float("nan"), 1.5e9)
        with pytest.raises(ValidationError):
            tec_doppler(1e14, -1.5e9)


class TestVtecIngestion:
    def _write(self, tmp_path, text):
        target = tmp_path / "vtec.csv"
        target.write_text(text)
        return str(target)

    def test_reads_and_scales(self, tmp_path):
        path = self._write(
            tmp_path, "t_unix_s,vtec_tecu\n0.0,10.0\n30.0,10.5\n60.0,11.2\n"
        )
        samples = read_vtec_csv(path)
        assert len(samples) == 3
        assert samples[0] == (0.0, 10.0 * 1e16)
        assert samples[2] == (60.0, 11.2 * 1e16)

    def test_header_whitespace_tolerated(self, tmp_path):
        path = self._write(tmp_path, " t_unix_s , vtec_tecu\n0,1\n1,2\n")
        assert len(read_vtec_csv(path)) == 2

    def test_bad_header_rejected(self, tmp_path):
        path = self._write(tmp_path, "time,tec\n0.0,10.0\n")
        with pytest.raises(ValidationError):
            read_vtec_csv(path)

    def test_bad_rows_rejected(self, tmp_path):
        with pytest.raises(ValidationError):
            read_vtec_csv(self._write(tmp_path, "t_unix_s,vtec_tecu\n0.0,ten\n"))
        with pytest.raises(ValidationError):
            read_vtec_csv(self._write(tmp_path, "t_unix_s,vtec_tecu\n0.0\n"))
        with pytest.raises(ValidationError):
            read_vtec_csv(self._write(tmp_path, "t_unix_s,vtec_tecu\n0.0,-1.0\n"))
        with pytest.raises(ValidationError):
            read_vtec_csv(
                self._write(tmp_path, "t_unix_s,vtec_tecu\n10.0,1.0\n5.0,1.1\n")
            )

    def test_centered_differences(self):
        samples = ((0.0, 1.0e17), (30.0, 1.3e17), (90.0, 1.45e17), (120.0, 1.6e17))
        rates = tec_rate(samples)
        assert len(rates) == 2
        assert rates[0][0] == 30.0
        assert rates[0][1] == pytest.approx((1.45e17 - 1.0e17) / 90.0, rel=1e-15)
        assert rates[1][1] == pytest.approx((1.6e17 - 1.3e17) / 90.0, rel=1e-15)

    def test_rate_needs_three_samples(self):
        with pytest.raises(ValidationError):
            tec_rate(((0.0, 1e17), (30.0, 1.1e17)))
        with pytest.raises(ValidationError):
            tec_rate(((0.0, 1e17), (0.0, 1.1e17), (30.0, 1.2e17)))

    def test_obliquity_mapping(self):
        assert vtec_to_stec(1e17, 0.0) == 1e17
        zenith = math.radians(60.0)
        sin_zp = EARTH.R * math.sin(zenith) / (EARTH.R + 350e3)
        expected = 1e17 / math.sqrt(1.0 - sin_zp**2)
        assert vtec_to_stec(1e17, zenith) == pytest.approx(expected, rel=1e-15)
        assert vtec_to_stec(1e17, math.radians(80.0)) > vtec_to_stec(
            1e17, math.radians(40.0)
        )

    def test_obliquity_validation(self):
        with pytest.raises(ValidationError):
            vtec_to_stec(-1.0, 0.3)
        with pytest.raises(ValidationError):
            vtec_to_stec(1e17, 2.0)
        with pytest.raises(ValidationError):
            vtec_to_stec(1e17, 0.3, shell_height=0.0)

    def test_csv_to_doppler_pipeline(self, tmp_path):
        path = self._write(
            tmp_path, "t_unix_s,vtec_tecu\n0,10.0\n30,10.3\n60,10.45\n"
        )
        t, rate = tec_rate(read_vtec_csv(path))[0]
        assert t == 30.0
        assert rate == pytest.approx(0.45e16 / 60.0, rel=1e-12)
        assert tec_doppler(rate, 1.5e9) > 0.0


# --- Troposphere ---


class TestTropoRefractivity:
    def test_dry_air(self):
        expected = 77.6 * 1000.0 / 280.0
        assert tropo_refractivity(1000.0, 0.0, 280.0) == pytest.approx(expected, rel=1e-15)

    def test_pinned_surface_value(self):
        assert tropo_refractivity(1013.0, 10.0, 288.0) == pytest.approx(318.0, abs=0.5)

    def test_cooling_raises_refractivity(self):
        warm = tropo_refractivity(1013.0, 10.0, 300.0)
        cool = tropo_refractivity(1013.0, 10.0, 280.0)
        assert cool > warm

    def test_validation(self):
        with pytest.raises(ValidationError):
            tropo_refractivity(1013.0, 10.0, 0.0)
        with pytest.raises(ValidationError):
            tropo_refractivity(-1.0, 10.0, 288.0)


QUARTIC_STD = TropoProfile.quartic(N_Td=315.0, h0d=40e3, N_Tw=50.0, h0w=12e3)


class TestTropoFtheta:
    def test_quadratic_closed_form_matches_quadrature(self):
        profile = TropoProfile.quadratic(N_T=315.0, h0=42_700.0, hT=120.0)
        for deg in (5.0, 10.0, 30.0, 60.0, 85.0):
            theta = math.radians(deg)
            quad = tropo_ftheta(profile, theta, method="quadrature")
            closed = tropo_ftheta(profile, theta, method="closed_form")
            assert closed == pytest.approx(quad, rel=1e-8)

    def test_quartic_closed_form_matches_quadrature(self):
        # acceptance demands 0.1%; the antiderivative is exact, so the
        # comparison sits at the quadrature tolerance instead
        for deg in range(5, 91, 5):
            theta = math.radians(deg)
            quad = tropo_ftheta(QUARTIC_STD, theta, method="quadrature")
            closed = tropo_ftheta(QUARTIC_STD, theta, method="closed_form")
            if deg == 90:
                assert quad == closed == 0.0
            else:
                assert closed == pytest.approx(quad, rel=1e-8)
                assert closed == pytest.approx(quad, rel=1e-3)

    def test_quartic_monotone_decreasing(self):
        for h0d in (30e3, 50e3):
            profile = TropoProfile.quartic(N_Td=315.0, h0d=h0d, N_Tw=50.0, h0w=12e3)
            values = [
                tropo_ftheta(profile, math.radians(d), method="closed_form")
                for d in range(10, 91, 2)
            ]
            assert all(b < a for a, b in zip(values, values[1:]))

    def test_zenith_is_exact_zero(self):
        assert tropo_ftheta(QUARTIC_STD, 0.5 * math.pi, method="closed_form") == 0.0
        assert tropo_ftheta(QUARTIC_STD, 0.5 * math.pi, method="quadrature") == 0.0
        quadratic = TropoProfile.quadratic(N_T=315.0, h0=40e3)
        assert tropo_ftheta(quadratic, 0.5 * math.pi, method="closed_form") == 0.0

    def test_low_elevation_warns_but_computes(self):
        with pytest.warns(LowElevationWarning):
            value = tropo_ftheta(QUARTIC_STD, math.radians(2.0), method="closed_form")
        assert value > tropo_ftheta(QUARTIC_STD, math.radians(5.0), method="closed_form")

    def test_station_height_handled(self):
        profile = TropoProfile.quadratic(N_T=300.0, h0=40e3, hT=1500.0)
        theta = math.radians(15.0)
        quad = tropo_ftheta(profile, theta, method="quadrature")
        closed = tropo_ftheta(profile, theta, method="closed_form")
        assert closed == pytest.approx(quad, rel=1e-8)

    def test_linear_in_surface_refractivity(self):
        theta = math.radians(25.0)
        one = tropo_ftheta(TropoProfile.quadratic(N_T=100.0, h0=40e3), theta, method="closed_form")
        two = tropo_ftheta(TropoProfile.quadratic(N_T=200.0, h0=40e3), theta, method="closed_form")
        assert two == pytest.approx(2.0 * one, rel=1e-12)

    def test_usage_errors(self):
        measured = TropoProfile.measured(P=1013.0, e=10.0, T_K=288.0)
        with pytest.raises(ValidationError):
            tropo_ftheta(measured, math.radians(30.0))
        with pytest.raises(ValidationError):
            tropo_ftheta(QUARTIC_STD, math.radians(30.0), method="simpson")
        with pytest.raises(ValidationError):
            tropo_ftheta(QUARTIC_STD, 0.0)
        with pytest.raises(ValidationError):
            tropo_ftheta(QUARTIC_STD, math.radians(91.0))
        with pytest.raises(ValidationError):
            tropo_ftheta("quartic", math.radians(30.0))


class TestElevationRate:
    def test_overhead_rate_pinned(self):
        rate = elevation_rate(0.0)
        assert rate == pytest.approx(-GPS_OMEGA * GPS_RS / (GPS_RS - EARTH.R), rel=1e-12)
        assert rate == pytest.approx(-1.92e-4, abs=1e-6)

    def test_even_in_time(self):
        assert elevation_rate(500.0) == elevation_rate(-500.0)
        assert elevation_rate(7000.0) == elevation_rate(-7000.0)

    def test_antipodal_rate(self):
        half_period = 0.5 * 43_082.0
        expected = -GPS_OMEGA * GPS_RS / (GPS_RS + EARTH.R)
        assert elevation_rate(half_period) == pytest.approx(expected, rel=1e-12)

    def test_magnitude_peaks_overhead(self):
        peak = abs(elevation_rate(0.0))
        for t in range(500, 21_500, 500):
            assert abs(elevation_rate(float(t))) < peak

    def test_exact_branch(self):
        assert elevation_rate(300.0, exact=True) == elevation_rate(300.0)
        h_t = 2000.0
        approx = elevation_rate(300.0, hT=h_t)
        exact = elevation_rate(300.0, hT=h_t, exact=True)
        assert exact != approx
        assert exact == pytest.approx(approx, rel=1e-3)

    def test_station_above_orbit_rejected(self):
        with pytest.raises(DomainError):
            elevation_rate(0.0, Rs=6.0e6)


class TestTropoDoppler:
    def test_zero_factors(self):
        assert tropo_doppler(1.5e9, 0.0, -1.9e-4) == 0.0
        assert tropo_doppler(1.5e9, 9.0e6, 0.0) == 0.0

    def test_assembly(self):
        f, ftheta, rate = 1.575e9, 9.045e6, -1.6e-4
        assert tropo_doppler(f, ftheta, rate) == 1e-6 * f / C_LIGHT * ftheta * rate

    def test_validation(self):
        with pytest.raises(ValidationError):
            tropo_doppler(-1.0, 9e6, 1e-4)
        with pytest.raises(ValidationError):
            tropo_doppler(1.5e9, float("nan"), 1e-4)

    def test_gps_pass_pipeline_matches_slant_oracle(self):
        # satellite passing a ground station: the f(theta) * rate
        # pipeline must agree with the finite-difference phase rate on
        # consecutive straight slant paths through the same profile
        f = 1.575e9
        t_30 = brentq(
            lambda t: math.atan2(
                GPS_RS * math.cos(GPS_OMEGA * t) - EARTH.R,
                GPS_RS * math.sin(GPS_OMEGA * t),
            )
            - math.radians(30.0),
            1.0,
            10_000.0,
            xtol=1e-12,
        )
        dt = 1.0

        def slant(t, with_medium):
            theta = math.atan2(
                GPS_RS * math.cos(GPS_OMEGA * t) - EARTH.R,
                GPS_RS * math.sin(GPS_OMEGA * t),
            )
            b = EARTH.R * math.cos(theta)
            samples = []
            for k in range(3001):
                r = EARTH.R + 40e3 * k / 3000
                p = math.sqrt(r * r - b * b) - EARTH.R * math.sin(theta)
                n_units = 0.0
                if with_medium:
                    for n_tx, h0x in ((315.0, 40e3), (50.0, 12e3)):
                        top = EARTH.R + h0x
                        if r <= top:
                            n_units += n_tx * ((top - r) / h0x) ** 4
                samples.append(
                    (
                        Vec3(p * math.cos(theta), 0.0, p * math.sin(theta)),
                        1.0 + 1e-6 * n_units,
                    )
                )
            return PhasePath(tuple(samples), t)

        t_a, t_b = t_30 - 0.5 * dt, t_30 + 0.5 * dt
        medium = phase_path_doppler(slant(t_a, True), slant(t_b, True), f)
        geometric = phase_path_doppler(slant(t_a, False), slant(t_b, False), f)
        oracle = medium - geometric
        pipeline = tropo_doppler(
            f,
            tropo_ftheta(QUARTIC_STD, math.radians(30.0), method="closed_form"),
            elevation_rate(t_30),
        )
        assert pipeline == pytest.approx(oracle, rel=0.02)
        # the agreement is far tighter than the documented envelope
        assert pipeline == pytest.approx(oracle, rel=1e-4)

    def test_pass_shift_is_negative_before_zenith_crossing(self):
        # after culmination the elevation falls and the path through the
        # troposphere lengthens: redshift
        value = tropo_doppler(
            1.575e9,
            tropo_ftheta(QUARTIC_STD, math.radians(30.0), method="closed_form"),
            elevation_rate(5743.0),
        )
        assert value < 0.0
