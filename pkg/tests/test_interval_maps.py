"""
Unit tests for the Gauss-type interval maps and their wandering sets.
"""

import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from gauss_hup.core_numerics import InvalidInput
from gauss_hup.interval_maps import (
    OrbitHitsZero,
    apply_map,
    attractor_points,
    frac1,
    frac2,
    in_core,
    in_wandering_prefix,
    involution_residual,
    orbit,
    step,
    wandering_bound,
    wandering_indicator,
    wandering_measure,
)
from gauss_hup.models import MapParams, WanderingQuery


class TestFractionalParts(unittest.TestCase):
    """Test cases for the two fractional-part conventions."""

    def test_frac1(self):
        self.assertAlmostEqual(frac1(2.7), 0.7)
        self.assertAlmostEqual(frac1(-0.3), 0.7)
        self.assertEqual(frac1(3.0), 0.0)

    def test_frac2_half_open(self):
        self.assertEqual(frac2(1.0), 1.0)
        self.assertEqual(frac2(-1.0), 1.0)
        self.assertEqual(frac2(3.0), 1.0)
        self.assertAlmostEqual(frac2(2.5), 0.5)
        self.assertAlmostEqual(frac2(-2.5), -0.5)

    def test_vectorised(self):
        np.testing.assert_allclose(frac2(np.array([0.5, 1.5, -1.5])), [0.5, -0.5, 0.5])


class TestMaps(unittest.TestCase):
    """Test cases for single steps and orbits."""

    def test_sigma_step(self):
        self.assertAlmostEqual(apply_map(MapParams.sigma(0.5), 0.3), 0.5 / 0.3 - 1.0)

    def test_tau_step(self):
        self.assertAlmostEqual(apply_map(MapParams.tau(1.0), 0.4), -0.5)

    def test_undefined_at_zero(self):
        with self.assertRaises(InvalidInput):
            apply_map(MapParams.tau(0.5), 0.0)
        with self.assertRaises(InvalidInput):
            apply_map(MapParams.sigma(0.5), 1.0)

    def test_step_marks_zero_with_nan(self):
        out = step(MapParams.sigma(0.5), np.array([0.0, 0.3]))
        self.assertTrue(np.isnan(out[0]))
        self.assertAlmostEqual(out[1], 0.5 / 0.3 - 1.0)

    def test_orbit_length(self):
        points = orbit(MapParams.sigma(0.7), 0.41, 5)
        self.assertEqual(len(points), 6)
        self.assertEqual(points[0], 0.41)

    def test_orbit_hitting_zero(self):
        p = MapParams.sigma(0.5)
        self.assertEqual(orbit(p, 0.25, 1), [0.25, 0.0])
        with self.assertRaises(OrbitHitsZero):
            orbit(p, 0.25, 2)

    def test_core_membership(self):
        sigma = MapParams.sigma(0.5)
        tau = MapParams.tau(0.5)
        np.testing.assert_array_equal(in_core(sigma, [0.0, 0.5, 0.6]), [False, True, False])
        np.testing.assert_array_equal(in_core(tau, [-0.5, 0.0, 0.5, 0.7]), [True, True, True, False])

    def test_involution_on_attractor(self):
        for p in (MapParams.sigma(0.5), MapParams.tau(0.5), MapParams.tau(0.9)):
            self.assertLess(involution_residual(p), 1e-10)
            self.assertFalse(np.any(in_core(p, attractor_points(p))))


class TestWanderingSets(unittest.TestCase):
    """Test cases for wandering-set measures and bounds."""

    def test_depth_one_sigma_closed_form(self):
        q = WanderingQuery(MapParams.sigma(0.5), 1)
        self.assertAlmostEqual(wandering_measure(q, "lambda1"), math.log(1.5), places=8)

    def test_depth_one_tau_closed_form(self):
        q = WanderingQuery(MapParams.tau(0.5), 1)
        self.assertAlmostEqual(wandering_measure(q, "kappa1"), math.log(3.0), places=8)

    def test_measure_decreases_and_respects_bound(self):
        for p, weight in ((MapParams.sigma(0.5), "lambda1"), (MapParams.tau(0.5), "kappa1"),
                          (MapParams.sigma(0.8), "lambda1")):
            previous = math.inf
            for depth in range(1, 7):
                q = WanderingQuery(p, depth)
                measure = wandering_measure(q, weight)
                self.assertLessEqual(measure, previous + 1e-12)
                self.assertLessEqual(measure, wandering_bound(q) + 1e-4)
                previous = measure

    def test_bound_formulas(self):
        sigma = WanderingQuery(MapParams.sigma(0.5), 2)
        tau = WanderingQuery(MapParams.tau(0.5), 2)
        self.assertAlmostEqual(wandering_bound(sigma), (2 / 3) ** 2 * math.log(2))
        self.assertAlmostEqual(wandering_bound(tau), 2.0)

    def test_bound_needs_parameter_below_one(self):
        with self.assertRaises(InvalidInput):
            wandering_bound(WanderingQuery(MapParams.sigma(1.0), 3))

    def test_critical_parameter_measure_is_finite(self):
        q = WanderingQuery(MapParams.tau(1.0), 2)
        self.assertTrue(math.isfinite(wandering_measure(q, "kappa1", resolution=20000)))

    def test_invalid_arguments(self):
        q = WanderingQuery(MapParams.sigma(0.5), 2)
        with self.assertRaises(InvalidInput):
            wandering_measure(q, resolution=10)
        with self.assertRaises(InvalidInput):
            wandering_measure(q, weight="lebesgue")

    @settings(max_examples=200, deadline=None)
    @given(st.floats(min_value=1e-6, max_value=1 - 1e-6), st.integers(min_value=1, max_value=4))
    def test_vectorised_membership_matches_orbit(self, x, depth):
        q = WanderingQuery(MapParams.sigma(0.6), depth)
        self.assertEqual(bool(wandering_indicator(q, np.array([x]))[0]),
                         in_wandering_prefix(q, x))


if __name__ == '__main__':
    unittest.main()
