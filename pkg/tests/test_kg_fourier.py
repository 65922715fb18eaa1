"""
Unit tests for hyperbola measures, lattice crosses and the sici spiral.
"""

import math
import unittest

import numpy as np

from gauss_hup.core_numerics import InvalidInput, bessel_j1_ratio, sici
from gauss_hup.kg_fourier import (
    HyperbolaMeasure,
    LatticeCross,
    critical_f0,
    cross_ft_closed_form,
    f0_line,
    f0_measure,
    ft_exp_inv_t_check,
    hyperbola_ft,
    lattice_residual_scan,
    periodized_vanishing_residual,
    poisson_smoothed_bessel_target,
    regularized_ft_exp_check,
    scaling_covariance_gap,
    spiral_samples,
)


class TestLatticeCross(unittest.TestCase):
    """Test cases for truncated lattice crosses."""

    def test_full_cross(self):
        points = LatticeCross(2.0, 2.0, m_max=2, n_max=3).points()
        self.assertEqual(len(points), 11)
        self.assertEqual([label for label, _ in points].count("origin"), 1)
        self.assertIn(("m=-2", (-4.0, 0.0)), points)
        self.assertIn(("n=3", (0.0, 6.0)), points)

    def test_quadrant(self):
        points = LatticeCross(1.0, 4.0, m_max=2, n_max=3, quadrant="+-").points()
        self.assertEqual(len(points), 6)
        self.assertTrue(all(xi1 >= 0 and xi2 <= 0 for _, (xi1, xi2) in points))

    def test_validation(self):
        with self.assertRaises(InvalidInput):
            LatticeCross(quadrant="+")
        with self.assertRaises(InvalidInput):
            LatticeCross(alpha=0.0)
        with self.assertRaises(InvalidInput):
            LatticeCross(m_max=-1)


class TestDensities(unittest.TestCase):
    """Test cases for the critical density and hyperbola measures."""

    def test_f0_values(self):
        self.assertAlmostEqual(critical_f0(0.5), 1.0 / 1.5)
        self.assertAlmostEqual(critical_f0(1.0), 0.5)
        self.assertAlmostEqual(critical_f0(2.0), -1.0 / 6.0)
        self.assertEqual(critical_f0(-1.0), 0.0)

    def test_general_form_is_rescaled_f0(self):
        ts = np.array([0.1, 0.4, 0.9, 1.7, 6.0])
        for alpha in (1.0, 4.0):
            np.testing.assert_allclose(critical_f0(ts, alpha), critical_f0(alpha * ts / 2) / 4,
                                       rtol=1e-14)

    def test_mass_must_be_positive(self):
        with self.assertRaises(InvalidInput):
            HyperbolaMeasure(f0_line(), mass=0.0)

    def test_f0_has_zero_total_mass(self):
        self.assertAlmostEqual(abs(hyperbola_ft(f0_measure(), (0.0, 0.0))), 0.0, delta=1e-6)

    def test_periodized_f0_vanishes(self):
        r1, r2 = periodized_vanishing_residual(f0_line(), 1.0, [0.3, 0.7])
        self.assertLess(r1, 1e-5)
        self.assertLess(r2, 1e-5)

    def test_periodized_parameter_range(self):
        with self.assertRaises(InvalidInput):
            periodized_vanishing_residual(f0_line(), 1.5, [0.5])
        with self.assertRaises(InvalidInput):
            periodized_vanishing_residual(f0_line(), 1.0, [1.0])


class TestTransforms(unittest.TestCase):
    """Test cases for hyperbola Fourier transforms."""

    def test_f0_vanishes_on_small_cross(self):
        entries, worst = lattice_residual_scan(f0_measure(), LatticeCross(2.0, 2.0, 1, 1))
        self.assertEqual(len(entries), 5)
        self.assertTrue(all(e.error is None for e in entries))
        self.assertLess(worst, 1e-4)

    def test_closed_form_on_horizontal_axis(self):
        value = cross_ft_closed_form(1.0)
        self.assertAlmostEqual(value.real, 0.147336, delta=1e-5)
        self.assertAlmostEqual(value.imag, 0.562282, delta=1e-5)

    def test_closed_form_vanishes_on_even_lattice(self):
        self.assertEqual(cross_ft_closed_form(4.0), 0j)
        with self.assertRaises(InvalidInput):
            cross_ft_closed_form(-2.0, require_nonvanishing=True)

    def test_direct_route_matches_closed_form(self):
        xi = 1.3
        direct = hyperbola_ft(f0_measure(), (xi, 0.0))
        self.assertLess(abs(direct - cross_ft_closed_form(xi)), 1e-4)

    def test_scaling_covariance(self):
        self.assertLess(scaling_covariance_gap(f0_measure(math.pi), (0.7, 0.0)), 1e-5)

    def test_j1_ratio_transform(self):
        _, _, gap = ft_exp_inv_t_check(1j)
        self.assertLess(gap, 1e-5)
        with self.assertRaises(InvalidInput):
            ft_exp_inv_t_check(1.0 + 0j)

    def test_regularized_transform_arguments(self):
        with self.assertRaises(InvalidInput):
            regularized_ft_exp_check([1.0], eps=0.5)
        with self.assertRaises(InvalidInput):
            regularized_ft_exp_check([-1.0], eps=1e-2)

    def test_regularized_transform_matches_smoothed_target(self):
        [(x, value, target, gap)] = regularized_ft_exp_check([2.0], eps=1e-2)
        self.assertEqual(x, 2.0)
        self.assertLess(gap, 1e-4)
        self.assertAlmostEqual(value, target, delta=1e-4)

    def test_smoothed_target_near_unsmoothed(self):
        target = poisson_smoothed_bessel_target(2.0, 1e-2)
        self.assertLess(abs(target + float(bessel_j1_ratio(2.0))), 5e-2)


class TestSpiral(unittest.TestCase):
    """Test cases for the ci + i si spiral."""

    def test_rows_and_minimum(self):
        rows, minimum = spiral_samples(0.1, 1.0, 0.1)
        self.assertEqual(len(rows), 10)
        self.assertAlmostEqual(rows[-1][0], 1.0)
        si, ci = sici(math.pi)
        self.assertAlmostEqual(rows[-1][1], ci)
        self.assertAlmostEqual(rows[-1][2], si)
        self.assertEqual(minimum, min(row[3] for row in rows))
        self.assertGreater(minimum, 0.0)

    def test_invalid_range(self):
        with self.assertRaises(InvalidInput):
            spiral_samples(0.0, 1.0, 0.1)
        with self.assertRaises(InvalidInput):
            spiral_samples(2.0, 1.0, 0.1)
        with self.assertRaises(InvalidInput):
            spiral_samples(0.1, 1.0, 0.0)


if __name__ == '__main__':
    unittest.main()
