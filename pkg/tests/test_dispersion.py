import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from swtlg.dispersion import (FieldPoint, dipole_factor_F, dispersion_point, ellipsoid_factor_g,
                              frequency_curve, k_of_omega, k_roots, omega_of_k)
from swtlg.errors import (AmbiguousBranchError, BelowBandError, EvanescentError, InvalidArgumentError,
                          SingularityError)
from swtlg.materials import MaterialStack, load_material_file, load_preset, preset_names

from oracles import omega_mp

# 50-digit mpmath evaluations from tests/oracles.py, frozen
G_AT_5E7 = 0.20275158430322241657
OMEGA_POINTS = [
    (1e8, 0.0, 200e-9, 110321996331.9127398),
    (1.8e8, 0.0147, 200e-9, 221941959944.13085194),
    (2.5e8, -0.1, 200e-9, 338961466712.64639252),
    (1.2e8, 0.1, 32e-9, 198480183268.15983032),
    (5e7, 0.05, 200e-9, 75935741949.306628625),
]
F_AT_45DEG = 2.3505777337644397107


def test_presets_ship_both_widths():
    assert {"cofeb-paper", "cofeb-paper-fig2", "cofeb-paper-mumax-run"} <= set(preset_names())
    s = load_preset("cofeb-paper")
    assert s.saturation_magnetization == 1.36e6
    assert s.exchange_constant == 18.6e-12
    assert s.damping == 0.004
    assert s.gyromagnetic_ratio == 1.76e11
    assert s.waveguide_thickness == 9e-9
    assert s.mode_number == 1
    assert load_preset("cofeb-paper-fig2").waveguide_width == 200e-9
    assert load_preset("cofeb-paper-mumax-run").waveguide_width == 32e-9


def test_material_file_roundtrip(tmp_path):
    path = tmp_path / "yig.ini"
    path.write_text("[yig]\nsaturation_magnetization = 1.4e5\nexchange_constant = 3.5e-12\n"
                    "damping = 2e-4\ngyromagnetic_ratio = 1.76e11\nwaveguide_width = 1e-6\n"
                    "waveguide_thickness = 3e-8\nmode_number = 1\n")
    s = load_material_file(path)
    assert s.saturation_magnetization == 1.4e5 and s.waveguide_width == 1e-6


@pytest.mark.parametrize("bad", [{"saturation_magnetization": 0}, {"waveguide_width": -1e-9},
                                 {"mode_number": 0}, {"exchange_constant": float("nan")}])
def test_material_invariants(stack, bad):
    with pytest.raises(InvalidArgumentError):
        stack.with_(**bad)


def test_lambda_ex_definition(stack):
    assert stack.lambda_ex == pytest.approx(2 * 18.6e-12 / (4e-7 * math.pi * 1.36e6 ** 2), rel=1e-12)


class TestG:
    def test_against_mpmath(self):
        k_tot = 5e7 ** 2 + (math.pi / 200e-9) ** 2
        assert ellipsoid_factor_g(k_tot, 9e-9) == pytest.approx(G_AT_5E7, rel=1e-13)

    def test_large_argument_tends_to_one(self):
        assert ellipsoid_factor_g(1e30, 1e-6) == pytest.approx(1.0, abs=1e-8)

    def test_small_argument_tends_to_zero(self):
        assert ellipsoid_factor_g(1e-6, 1e-9) == pytest.approx(0.0, abs=1e-12)

    def test_series_branch_is_continuous(self):
        # x = d*sqrt(k_tot) straddles the 1e-6 cutoff
        below = ellipsoid_factor_g((0.999e-6 / 1e-9) ** 2, 1e-9)
        above = ellipsoid_factor_g((1.001e-6 / 1e-9) ** 2, 1e-9)
        exact = float(1 - (1 - mp.exp(-mp.mpf("1e-6"))) / mp.mpf("1e-6"))
        assert below < exact < above
        assert above - below == pytest.approx(1e-9, rel=1e-3)

    @given(st.floats(1e6, 1e20), st.floats(1e-10, 1e-6))
    def test_range(self, k_tot, d):
        assert 0.0 <= ellipsoid_factor_g(k_tot, d) < 1.0

    @pytest.mark.parametrize("args", [(float("inf"), 1e-9), (1e14, float("nan")), (0.0, 1e-9), (1e14, 0.0)])
    def test_rejects(self, args):
        with pytest.raises(InvalidArgumentError):
            ellipsoid_factor_g(*args)


class TestF:
    def test_aligned_reduces_to_one_minus_g(self):
        assert dipole_factor_F(1e15, 0.3, 1e9, 2e11, 0.0, 0.0, 1.6e-17) == pytest.approx(0.7, abs=1e-15)

    @given(st.floats(0, 0.999), st.floats(1e12, 1e17), st.floats(-1e10, 1e10))
    def test_aligned_is_exactly_one_minus_g(self, g, k_tot, omega_h):
        assert dipole_factor_F(k_tot, g, omega_h, 3e11, 0.3, 0.3, 1.6e-17) == 1.0 - g

    def test_perpendicular(self, stack):
        k_tot, g, wh = 2e15, 0.25, 3e9
        wm, lam = stack.omega_m, stack.lambda_ex
        expect = 1 + wm * g * (1 - g) / (wh + wm * lam * k_tot)
        assert dipole_factor_F(k_tot, g, wh, wm, math.pi / 2, 0.0, lam) == pytest.approx(expect, rel=1e-14)

    def test_forty_five_degrees_against_mpmath(self, stack):
        k_tot = 5e7 ** 2 + (math.pi / 200e-9) ** 2
        g = ellipsoid_factor_g(k_tot, 9e-9)
        got = dipole_factor_F(k_tot, g, 1.76e11 * 0.02, stack.omega_m, math.pi / 4, 0.0, stack.lambda_ex)
        assert got == pytest.approx(F_AT_45DEG, rel=1e-12)

    def test_singular_denominator(self):
        with pytest.raises(SingularityError):
            dipole_factor_F(1e15, 0.3, -2e11 * 1e-17 * 1e15, 2e11, 0.0, 0.0, 1e-17)


class TestOmega:
    @pytest.mark.parametrize("k, b, width, expect", OMEGA_POINTS)
    def test_frozen_mpmath_points(self, stack, k, b, width, expect):
        assert omega_of_k(k, b, stack.with_(waveguide_width=width)) == pytest.approx(expect, rel=1e-12)

    def test_random_points_match_extended_precision(self, stack):
        rng = np.random.default_rng(20261018)
        for k, b in zip(10 ** rng.uniform(8, 8.7, 20), rng.uniform(-0.1, 0.1, 20)):
            got = omega_of_k(k, b, stack)
            ref = float(omega_mp(k, b, stack.waveguide_width))
            assert got == pytest.approx(ref, rel=1e-12)

    def test_geometry_angle_matches_mpmath(self, stack):
        s = stack.with_(theta_k_from_geometry=True)
        k = 3e7
        ref = omega_mp(k, 0.02, s.waveguide_width, theta_k=mp.atan(mp.pi / (k * mp.mpf(s.waveguide_width))))
        assert omega_of_k(k, 0.02, s) == pytest.approx(float(ref), rel=1e-12)

    def test_no_magnetization_collapses_to_field(self, stack):
        # omega_M -> 0 is not constructible (Ms > 0); approach it and compare to |omega_H|
        s = stack.with_(saturation_magnetization=1e-3, exchange_constant=1e-30)
        for k in (1e6, 1e8):
            assert omega_of_k(k, 0.05, s) == pytest.approx(1.76e11 * 0.05, rel=1e-6)

    def test_field_ordering(self, stack):
        for k in (1e8, 2e8, 4e8):
            assert omega_of_k(k, 0.1, stack) > omega_of_k(k, 0.0, stack) > omega_of_k(k, -0.1, stack)

    def test_monotone_in_field_by_finite_differences(self, stack):
        h = 1e-6
        for k in np.geomspace(1.2e8, 2.6e8, 12):
            for b in np.linspace(-0.1, 0.1, 9):
                d = (omega_of_k(k, b + h, stack) - omega_of_k(k, b - h, stack)) / (2 * h)
                assert d > 0

    def test_evanescent(self, stack):
        with pytest.raises(EvanescentError) as info:
            omega_of_k(1e5, -0.1, stack)
        assert info.value.radicand < 0

    def test_negative_k_rejected(self, stack):
        with pytest.raises(InvalidArgumentError):
            omega_of_k(-1.0, 0.0, stack)

    def test_dispersion_point_invariants(self, stack):
        p = dispersion_point(1e8, FieldPoint(0.01), stack)
        assert p.k_tot == pytest.approx(1e16 + (math.pi / 200e-9) ** 2, rel=1e-15)
        assert 0 <= p.g < 1
        assert p.f_factor == 1 - p.g
        assert p.omega == omega_of_k(1e8, 0.01, stack)

    def test_curve_matches_pointwise(self, stack):
        ks = np.geomspace(1e6, 5e8, 50)
        curve = frequency_curve(ks, -0.1, stack)
        for k, f in zip(ks, curve):
            try:
                assert f == pytest.approx(omega_of_k(k, -0.1, stack) / (2 * math.pi), rel=1e-14)
            except EvanescentError:
                assert math.isnan(f)


class TestInversion:
    @pytest.mark.parametrize("f", [30e9, 35e9, 40e9])
    def test_round_trip(self, stack, f):
        k = k_of_omega(f, 0.0, stack)
        assert abs(omega_of_k(k, 0.0, stack) - 2 * math.pi * f) / (2 * math.pi * f) < 1e-9

    def test_below_band(self, stack):
        with pytest.raises(BelowBandError):
            k_of_omega(1e9, 0.1, stack)

    def test_field_orders_wavenumber(self, stack):
        assert k_of_omega(35e9, -0.01, stack) > k_of_omega(35e9, 0.0, stack) > k_of_omega(35e9, 0.01, stack)

    def test_ambiguous_branch(self, stack):
        # thick, wide film: the backward-volume branch dips below its k -> 0 value
        s = stack.with_(waveguide_width=20e-6, waveguide_thickness=100e-9)
        roots = k_roots(7.14e9, 0.05, s)
        assert roots.size == 2
        with pytest.raises(AmbiguousBranchError) as info:
            k_of_omega(7.14e9, 0.05, s)
        assert info.value.roots == pytest.approx(list(roots))
        # narrowing the bracket selects one branch
        k = k_of_omega(7.14e9, 0.05, s, bracket=(2e7, 1e9))
        assert k == pytest.approx(roots[1], rel=1e-12)

    @pytest.mark.parametrize("kw", [{"bracket": (1e9, 1e4)}, {"bracket": (0, 1e9)}, {"grid_points": 10}])
    def test_bad_arguments(self, stack, kw):
        with pytest.raises(InvalidArgumentError):
            k_of_omega(35e9, 0.0, stack, **kw)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(25e9, 45e9), st.floats(-0.1, 0.1))
    def test_round_trip_property(self, stack, f, b):
        k = k_of_omega(f, b, stack)
        assert abs(omega_of_k(k, b, stack) - 2 * math.pi * f) / (2 * math.pi * f) < 1e-9
