"""Closed-form fringe evaluators: worked values and invariants."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fringekit.fringe_models import (FpiSpec, MziSpec, NSlitSpec, ProfileSpec,
                                     SplitPortSpec, SuperresolutionSpec,
                                     fpi_transmission, grating_factor,
                                     grating_phases, mzi_intensity,
                                     nslit_intensity, nslit_intensity_at_angle,
                                     profile_value, split_port_intensity,
                                     superresolution_fringe)

PI = math.pi

finite_phase = st.floats(min_value=-30.0, max_value=30.0,
                         allow_nan=False, allow_infinity=False)


class TestSpecValidation:
    @pytest.mark.parametrize("kwargs", [
        {"input_intensity": 0.0},
        {"input_intensity": -1.0},
        {"port": "C"},
        {"port": "a"},
    ])
    def test_mzi_rejects(self, kwargs):
        with pytest.raises(ValueError):
            MziSpec(**kwargs)

    @pytest.mark.parametrize("kwargs", [
        {"input_intensity": -2.0},
        {"splits": -1},
        {"splits": 1.5},
    ])
    def test_split_rejects(self, kwargs):
        with pytest.raises(ValueError):
            SplitPortSpec(**kwargs)

    @pytest.mark.parametrize("kwargs", [
        {"slit_count": 1},
        {"slit_count": 2, "slit_separation": 0.0},
        {"slit_count": 2, "slit_width": -0.1},
        {"slit_count": 2, "slit_separation": 1.0, "slit_width": 1.0},
        {"slit_count": 2, "slit_separation": 1.0, "slit_width": 2.0},
        {"slit_count": 2, "wavelength": 0.0},
    ])
    def test_nslit_rejects(self, kwargs):
        with pytest.raises(ValueError):
            NSlitSpec(**kwargs)

    @pytest.mark.parametrize("r", [0.0, 1.0, -0.5, 1.2])
    def test_fpi_rejects(self, r):
        with pytest.raises(ValueError):
            FpiSpec(r)

    def test_superres_rejects(self):
        with pytest.raises(ValueError):
            SuperresolutionSpec(0)

    @pytest.mark.parametrize("kwargs", [
        {"kind": "cubic"},
        {"kind": "gaussian", "scale": 0.0},
    ])
    def test_profile_rejects(self, kwargs):
        with pytest.raises(ValueError):
            ProfileSpec(**kwargs)

    def test_zero_width_slits_allowed(self):
        spec = NSlitSpec.grating(5)
        assert spec.slit_width == 0.0

    def test_ratio_preset(self):
        spec = NSlitSpec.from_ratio(4)
        assert spec.slit_separation / spec.slit_width == pytest.approx(3.0)


class TestMzi:
    def test_port_values(self):
        spec = MziSpec(1.0, "A")
        assert mzi_intensity(0.0, spec) == pytest.approx(1.0, abs=1e-15)
        assert mzi_intensity(PI, spec) == pytest.approx(0.0, abs=1e-15)
        assert mzi_intensity(PI / 2, MziSpec(1.0, "B")) == pytest.approx(0.5)

    @given(phi=finite_phase, intensity=st.floats(min_value=0.01, max_value=100.0))
    def test_energy_conservation(self, phi, intensity):
        a = mzi_intensity(phi, MziSpec(intensity, "A"))
        b = mzi_intensity(phi, MziSpec(intensity, "B"))
        assert abs(a + b - intensity) <= 1e-12 * max(1.0, intensity)

    @given(phi=finite_phase, splits=st.integers(min_value=0, max_value=20))
    def test_split_consistency(self, phi, splits):
        # undoing the K halvings recovers port A exactly
        split = split_port_intensity(phi, SplitPortSpec(1.0, splits))
        port_a = mzi_intensity(phi, MziSpec(1.0, "A"))
        assert abs(split * 2.0 ** splits - port_a) <= 1e-12

    def test_split_examples(self):
        assert split_port_intensity(0.0, SplitPortSpec(1.0, 0)) == pytest.approx(1.0)
        assert split_port_intensity(PI / 2, SplitPortSpec(1.0, 1)) == pytest.approx(0.25)

    def test_pure_evaluator(self):
        spec = MziSpec(3.0, "B")
        assert mzi_intensity(1.234, spec) == mzi_intensity(1.234, spec)


class TestNSlit:
    def test_two_slit_values(self):
        spec = NSlitSpec.grating(2)
        assert nslit_intensity(PI / 2, 0.0, spec) == pytest.approx(0.0, abs=1e-25)
        assert nslit_intensity(PI / 4, 0.0, spec) == pytest.approx(2.0, rel=1e-12)

    def test_two_slit_null_at_half_wavelength_path_difference(self):
        # a*sin(theta) = lambda/2 puts the two slits exactly out of phase
        spec = NSlitSpec(2, slit_separation=1.0, slit_width=0.0, wavelength=1.0)
        theta = math.asin(0.5)
        assert nslit_intensity_at_angle(theta, spec) == pytest.approx(0.0, abs=1e-25)

    def test_angle_domain(self):
        spec = NSlitSpec.grating(3)
        with pytest.raises(ValueError):
            nslit_intensity_at_angle(1.8, spec)

    @pytest.mark.parametrize("n", [2, 3, 10, 200])
    @pytest.mark.parametrize("p", [-2, -1, 0, 1, 3])
    def test_principal_maximum_limit(self, n, p):
        assert grating_factor(p * PI, n) == float(n * n)

    @pytest.mark.parametrize("n", [2, 7, 50, 200])
    @pytest.mark.parametrize("p", [-1, 0, 2])
    def test_limit_branch_is_continuous(self, n, p):
        # values a hair outside the singular branch must agree with N^2
        for eps in (1e-8, -1e-8):
            val = grating_factor(p * PI + eps, n)
            assert abs(val - n * n) < 1e-4 * n * n

    @given(alpha=finite_phase)
    def test_two_slit_reduction(self, alpha):
        # N=2 grating factor is 4cos^2(alpha)
        val = grating_factor(alpha, 2) / 4.0
        assert abs(val - math.cos(alpha) ** 2) <= 1e-12

    @given(alpha=finite_phase, n=st.integers(min_value=2, max_value=50))
    def test_grating_bounds(self, alpha, n):
        val = grating_factor(alpha, n)
        assert 0.0 <= val <= n * n * (1.0 + 1e-12)

    def test_envelope_scales_with_slit_ratio(self):
        spec = NSlitSpec.from_ratio(5, 3.0)
        alpha, beta = grating_phases(0.3, spec)
        assert beta / alpha == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_vectorized(self):
        spec = NSlitSpec.grating(8)
        alphas = np.linspace(-PI, PI, 101)
        vals = nslit_intensity(alphas, np.zeros_like(alphas), spec)
        assert vals.shape == alphas.shape
        scalar = nslit_intensity(float(alphas[17]), 0.0, spec)
        assert vals[17] == pytest.approx(scalar, rel=1e-15)


class TestFpi:
    def test_balanced_value(self):
        # F = 1 exactly when 2r = 1 - r^2
        spec = FpiSpec(math.sqrt(2.0) - 1.0)
        assert fpi_transmission(PI / 2, spec) == pytest.approx(0.5, rel=1e-12)

    def test_high_finesse_value(self):
        # 1/(1 + (2*0.999/(1-0.999^2))^2)
        spec = FpiSpec(0.999)
        assert fpi_transmission(PI / 2, spec) == pytest.approx(
            1.0010002494992226e-06, rel=1e-12)

    def test_unit_peak_at_resonance(self):
        spec = FpiSpec(0.99)
        assert fpi_transmission(0.0, spec) == 1.0

    @given(delta=finite_phase, r=st.floats(min_value=0.05, max_value=0.9999))
    def test_bounded(self, delta, r):
        val = fpi_transmission(delta, FpiSpec(r))
        assert 0.0 < val <= 1.0

    @pytest.mark.parametrize("delta", [0.4, 1.0, PI / 2, 2.0, 3.0])
    def test_below_peak_off_resonance(self, delta):
        assert fpi_transmission(delta, FpiSpec(0.9)) < 1.0


class TestSuperresolution:
    def test_peak_and_period(self):
        spec = SuperresolutionSpec(25)
        assert superresolution_fringe(0.0, spec) == pytest.approx(1.0)
        assert spec.period == pytest.approx(2 * PI / 25)

    @given(phi=finite_phase, n=st.integers(min_value=1, max_value=100))
    def test_periodicity(self, phi, n):
        spec = SuperresolutionSpec(n)
        a = superresolution_fringe(phi, spec)
        b = superresolution_fringe(phi + 2.0 * PI / n, spec)
        assert abs(a - b) <= 1e-9

    @given(phi=finite_phase)
    def test_single_slit_matches_two_port(self, phi):
        val = superresolution_fringe(phi, SuperresolutionSpec(1))
        assert abs(val - mzi_intensity(phi, MziSpec(1.0, "A"))) <= 1e-12


class TestProfiles:
    def test_gaussian_half_maximum(self):
        spec = ProfileSpec.gaussian(2.0)
        assert profile_value(0.0, spec) == 1.0
        x_half = 2.0 * math.sqrt(2.0 * math.log(2.0))
        assert profile_value(x_half, spec) == pytest.approx(0.5, rel=1e-12)

    def test_linear_support(self):
        spec = ProfileSpec.linear(1.5)
        assert profile_value(0.0, spec) == 1.0
        assert profile_value(0.75, spec) == pytest.approx(0.5)
        assert profile_value(1.5, spec) == 0.0
        assert profile_value(2.0, spec) == 0.0

    @given(x=finite_phase, scale=st.floats(min_value=0.1, max_value=10.0))
    def test_unit_bounds(self, x, scale):
        for kind in ("gaussian", "linear"):
            val = profile_value(x, ProfileSpec(kind, scale))
            assert 0.0 <= val <= 1.0

    def test_vectorized(self):
        xs = np.linspace(-3, 3, 61)
        vals = profile_value(xs, ProfileSpec.gaussian(1.0))
        assert vals.shape == xs.shape
