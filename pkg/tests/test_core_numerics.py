"""
Unit tests for the shared numerical core.
"""

import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy import special

from gauss_hup.config import NumericsConfig
from gauss_hup.core_numerics import (
    InvalidInput,
    NonConvergence,
    PvConfig,
    TailNotControlled,
    bessel_j1_ratio,
    bisect,
    gauss_legendre,
    integrate,
    integrate_osc_halfline,
    integrate_pv,
    lattice_sum,
    sici,
)


class TestIntegrate(unittest.TestCase):
    """Test cases for adaptive quadrature."""

    def test_smooth_finite_interval(self):
        value = integrate(np.exp, (0.0, 1.0), tol=1e-12)
        self.assertAlmostEqual(value, math.e - 1.0, places=11)

    def test_half_line(self):
        value = integrate(lambda t: 1.0 / (1.0 + t * t), (0.0, math.inf), tol=1e-10)
        self.assertAlmostEqual(value, math.pi / 2, places=8)

    def test_whole_line(self):
        value = integrate(lambda t: np.exp(-t * t), (-math.inf, math.inf), tol=1e-10)
        self.assertAlmostEqual(value, math.sqrt(math.pi), places=8)

    def test_reversed_interval_changes_sign(self):
        forward = integrate(np.cos, (0.0, 2.0), tol=1e-12)
        backward = integrate(np.cos, (2.0, 0.0), tol=1e-12)
        self.assertAlmostEqual(forward, -backward, places=12)

    def test_jump_on_breakpoint_is_exact(self):
        step = lambda t: np.where(np.asarray(t) < 0.3, 1.0, 0.0)
        value = integrate(step, (0.0, 1.0), tol=1e-12, breakpoints=[0.3])
        self.assertAlmostEqual(value, 0.3, places=12)

    def test_empty_interval(self):
        self.assertEqual(integrate(np.exp, (1.0, 1.0)), 0.0)

    def test_complex_integrand(self):
        value = integrate(lambda t: np.exp(1j * t), (0.0, math.pi), tol=1e-12)
        self.assertIsInstance(value, complex)
        self.assertAlmostEqual(value.real, 0.0, places=11)
        self.assertAlmostEqual(value.imag, 2.0, places=11)

    def test_invalid_tolerance(self):
        with self.assertRaises(InvalidInput):
            integrate(np.exp, (0.0, 1.0), tol=0.0)

    def test_budget_exhaustion_raises(self):
        with self.assertRaises(NonConvergence):
            integrate(lambda t: np.sin(1.0 / t) / t, (1e-12, 1.0), tol=1e-14,
                      max_subdivisions=50)

    def test_gauss_legendre_weights(self):
        x, w = gauss_legendre(16)
        self.assertAlmostEqual(float(np.sum(w)), 2.0, places=13)
        self.assertAlmostEqual(float(np.sum(w * x ** 4)), 0.4, places=13)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(min_value=0.1, max_value=5.0))
    def test_exponential_half_line(self, a):
        value = integrate(lambda t: np.exp(-a * t), (0.0, math.inf), tol=1e-10)
        self.assertAlmostEqual(value, 1.0 / a, delta=1e-8 / a)


class TestPrincipalValue(unittest.TestCase):
    """Test cases for principal-value integrals."""

    def setUp(self):
        self.cfg = PvConfig()

    def test_log_principal_value(self):
        value = integrate_pv(lambda t: 1.0 / (t - 1.0), 1.0, (0.0, 3.0), self.cfg)
        self.assertAlmostEqual(value, math.log(2.0), places=7)

    def test_hyperbolic_sine_integral(self):
        value = integrate_pv(lambda t: np.exp(t) / t, 0.0, (-1.0, 1.0), self.cfg)
        shi, _ = special.shichi(1.0)
        self.assertAlmostEqual(value, 2.0 * shi, places=7)

    def test_singularity_at_endpoint(self):
        with self.assertRaises(InvalidInput):
            integrate_pv(lambda t: 1.0 / t, 0.0, (0.0, 1.0), self.cfg)

    def test_config_validation(self):
        with self.assertRaises(InvalidInput):
            PvConfig(eps_schedule=(1e-3, 1e-2, 1e-4))
        with self.assertRaises(InvalidInput):
            PvConfig(eps_schedule=(1e-2, 1e-3), extrapolation=2)
        with self.assertRaises(InvalidInput):
            PvConfig(osc_tail_panels=4)

    def test_config_from_settings(self):
        settings_ = NumericsConfig(pv_tol=1e-5, eps_schedule=[1e-2, 1e-3, 1e-4, 1e-5])
        cfg = PvConfig.from_settings(settings_)
        self.assertEqual(cfg.tol, 1e-5)
        self.assertEqual(cfg.eps_schedule, (1e-2, 1e-3, 1e-4, 1e-5))
        self.assertLessEqual(cfg.quad_tol, 1e-9)


class TestOscillatoryHalfLine(unittest.TestCase):
    """Test cases for generalized Riemann integrals on the half-line."""

    def test_matches_cosine_and_sine_integrals(self):
        cfg = PvConfig()
        for xi in (1.0, -2.5, 0.3):
            a = math.pi * abs(xi)
            si_std, ci_std = special.sici(a)
            expected = complex(-ci_std, math.copysign(1.0, xi) * (math.pi / 2 - si_std))
            value = integrate_osc_halfline(xi, cfg)
            self.assertAlmostEqual(value.real, expected.real, delta=2e-6)
            self.assertAlmostEqual(value.imag, expected.imag, delta=2e-6)

    def test_zero_frequency_diverges(self):
        with self.assertRaises(InvalidInput):
            integrate_osc_halfline(0.0, PvConfig())


class TestSpecialFunctions(unittest.TestCase):
    """Test cases for sici, the J1 ratio and bisection."""

    def test_sici_tail_convention(self):
        si, ci = sici(1.0)
        si_std, ci_std = special.sici(1.0)
        self.assertAlmostEqual(si, si_std - math.pi / 2, places=14)
        self.assertAlmostEqual(ci, ci_std, places=14)

    def test_sici_tends_to_zero(self):
        si, ci = sici(np.array([1e4, 1e5]))
        self.assertTrue(np.all(np.abs(si) < 1e-3))
        self.assertTrue(np.all(np.abs(ci) < 1e-3))

    def test_sici_rejects_nonpositive(self):
        with self.assertRaises(InvalidInput):
            sici(0.0)
        with self.assertRaises(InvalidInput):
            sici(np.array([1.0, -1.0]))

    def test_j1_ratio_at_zero(self):
        self.assertEqual(bessel_j1_ratio(0.0), 1.0)

    def test_j1_ratio_against_scipy(self):
        xs = np.array([0.5, 3.0, 10.0, 29.0, 31.0, 100.0, 1000.0])
        expected = special.j1(2.0 * np.sqrt(xs)) / np.sqrt(xs)
        np.testing.assert_allclose(bessel_j1_ratio(xs), expected, rtol=0, atol=1e-9)

    def test_j1_ratio_first_zero(self):
        root = bisect(bessel_j1_ratio, 3.0, 4.0)
        expected = (special.jn_zeros(1, 1)[0] / 2.0) ** 2
        self.assertAlmostEqual(root, expected, places=9)
        self.assertAlmostEqual(root, 3.6705, places=3)

    def test_j1_ratio_rejects_negative(self):
        with self.assertRaises(InvalidInput):
            bessel_j1_ratio(-1.0)

    def test_bisect_square_root(self):
        self.assertAlmostEqual(bisect(lambda x: x * x - 2.0, 0.0, 2.0), math.sqrt(2), places=11)

    def test_bisect_needs_sign_change(self):
        with self.assertRaises(InvalidInput):
            bisect(lambda x: x * x + 1.0, -1.0, 1.0)


class TestLatticeSum(unittest.TestCase):
    """Test cases for one-sided lattice sums."""

    def test_compact_support_sums_exactly(self):
        value = lattice_sum(lambda t: np.ones_like(t), 0.1, 0.25, "compact", (0.0, 1.0))
        self.assertEqual(value, 4.0)

    def test_inverse_square_basel(self):
        value = lattice_sum(lambda t: 1.0 / (t * t), 1.0, 1.0, "inverse_square",
                            (0.5, math.inf), tol=1e-6)
        self.assertAlmostEqual(value, math.pi ** 2 / 6, places=7)

    def test_slow_decay_rejected(self):
        with self.assertRaises(TailNotControlled):
            lattice_sum(lambda t: 1.0 / t, 1.0, 1.0, "bounded")

    def test_nonpositive_step(self):
        with self.assertRaises(InvalidInput):
            lattice_sum(lambda t: 1.0 / (t * t), 1.0, 0.0, "inverse_square")


if __name__ == '__main__':
    unittest.main()
