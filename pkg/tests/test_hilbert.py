"""
Unit tests for Hilbert transforms on the line and on the circle.
"""

import math
import unittest

import numpy as np

from gauss_hup.core_numerics import InvalidInput, JumpPoint, NumericsError
from gauss_hup.hilbert import (
    anti_involution_residual,
    c_beta,
    commutator_Jstar_hilbert,
    harmonic_extension,
    hilbert,
    hilbert_modified,
    hilbert_periodic,
    involution_J,
    involution_J_line,
    involution_Jstar,
    involution_Jstar_line,
    line_l1_norm,
    line_pairing,
    periodization_fourier_gap,
    periodization_l1_gap,
    periodize,
    szego_minus,
    szego_pairing,
    szego_plus,
    tabulate_transform,
    valeur_au_point,
    windowed_hilbert_limit,
)
from gauss_hup.models import (
    DecayClass,
    LineFunction,
    PeriodicFunction,
    line_bump,
    line_indicator,
    poisson_kernel,
)


def _ones(t):
    return np.ones_like(np.asarray(t, dtype=float))


class TestLineHilbert(unittest.TestCase):
    """Test cases for the line transform and its modified form."""

    def test_box(self):
        box = line_indicator(-1.0, 1.0)
        self.assertAlmostEqual(hilbert(box, 0.0), 0.0, delta=1e-8)
        self.assertAlmostEqual(hilbert(box, 0.5), math.log(3.0) / math.pi, delta=1e-6)
        self.assertAlmostEqual(hilbert(box, 2.0), math.log(3.0) / math.pi, delta=1e-6)

    def test_poisson_kernel_goes_to_conjugate_kernel(self):
        eps = 0.5
        f = poisson_kernel(eps)
        for x in (-1.3, 0.2, 2.5):
            expected = x / (math.pi * (x * x + eps * eps))
            self.assertAlmostEqual(hilbert(f, x), expected, delta=1e-6)

    def test_bounded_input_rejected(self):
        f = LineFunction(_ones, DecayClass.BOUNDED, name="one")
        with self.assertRaises(InvalidInput):
            hilbert(f, 0.3)

    def test_modified_transform_of_constant(self):
        f = LineFunction(_ones, DecayClass.BOUNDED, name="one")
        self.assertAlmostEqual(hilbert_modified(f, 0.7), 0.0, delta=1e-6)

    def test_jump_warning(self):
        with self.assertWarns(JumpPoint):
            try:
                hilbert(line_indicator(0.0, 1.0), 1.0)
            except NumericsError:
                pass

    def test_harmonic_extension(self):
        f = poisson_kernel(1.0, center=0.4)
        self.assertAlmostEqual(harmonic_extension(f, 1j), 0.0, delta=1e-12)
        with self.assertRaises(InvalidInput):
            harmonic_extension(f, 0.5 + 0j)

    def test_anti_involution(self):
        f = poisson_kernel(1.0)
        self.assertLess(anti_involution_residual(f, [-0.8, 0.3]), 1e-4)

    def test_tabulate_rejects_jumps_and_unknown_transforms(self):
        with self.assertRaises(InvalidInput):
            tabulate_transform(line_indicator(0.0, 1.0))
        with self.assertRaises(InvalidInput):
            tabulate_transform(poisson_kernel(1.0), "riesz")

    def test_szego_sign(self):
        with self.assertRaises(InvalidInput):
            szego_pairing(poisson_kernel(1.0), 1.0, sign=0)

    def test_szego_projections(self):
        p = poisson_kernel(1.0)
        for x in (-1.2, 0.4):
            plus = szego_plus(p, x)
            self.assertAlmostEqual(abs(plus - 1j / (2 * math.pi * (x + 1j))), 0.0, delta=1e-6)
            self.assertAlmostEqual(abs(plus + szego_minus(p, x) - float(p(x))), 0.0, delta=1e-12)


class TestInvolutions(unittest.TestCase):
    """Test cases for J_beta, J*_beta and their commutators with H."""

    def test_c_beta(self):
        f = poisson_kernel(1.0, center=0.5)
        self.assertEqual(c_beta(1.0, f), 0.0)
        with self.assertRaises(InvalidInput):
            c_beta(0.0, f)

    def test_J_is_an_involution(self):
        xs = np.array([-2.0, -0.3, 0.6, 1.7])
        twice = involution_J(0.8, lambda t: involution_J(0.8, np.cos, t), xs)
        np.testing.assert_allclose(twice, np.cos(xs), rtol=1e-12)

    def test_undefined_at_zero(self):
        with self.assertRaises(InvalidInput):
            involution_J(1.0, np.cos, 0.0)
        with self.assertRaises(InvalidInput):
            involution_Jstar(1.0, np.cos, np.array([1.0, 0.0]))

    def test_Jstar_of_compact_away_from_zero_is_compact(self):
        g = involution_Jstar_line(1.0, line_indicator(0.5, 1.5))
        self.assertTrue(g.is_compact)
        self.assertAlmostEqual(g.support[0], -2.0)
        self.assertAlmostEqual(g.support[1], -2.0 / 3.0)
        self.assertAlmostEqual(line_l1_norm(g), 2.0 - 2.0 / 3.0, places=8)

    def test_J_line_is_an_L1_isometry_dual_to_Jstar(self):
        phi = line_bump(1.5, 0.5)
        p = poisson_kernel(1.0)
        jphi = involution_J_line(0.5, phi)
        self.assertEqual(jphi.support, (-0.5, -0.25))
        self.assertAlmostEqual(line_l1_norm(jphi), line_l1_norm(phi), delta=1e-8)
        lhs = line_pairing(lambda t: involution_Jstar(0.5, p, t), phi)
        self.assertAlmostEqual(lhs, line_pairing(p, jphi), delta=1e-8)

    def test_commutator(self):
        phi = line_indicator(0.5, 1.5)
        self.assertLess(commutator_Jstar_hilbert(1.0, phi, [0.3, 2.0, -0.7]), 1e-5)

    def test_commutator_needs_compact_phi(self):
        with self.assertRaises(InvalidInput):
            commutator_Jstar_hilbert(1.0, poisson_kernel(1.0), [1.0])

    def test_commutator_needs_zero_radius_when_support_straddles_zero(self):
        with self.assertRaises(InvalidInput):
            commutator_Jstar_hilbert(1.0, line_indicator(-1.0, 1.0), [1.0])


class TestCircle(unittest.TestCase):
    """Test cases for the 2-periodic transform and periodization."""

    def setUp(self):
        self.cos = PeriodicFunction(lambda t: np.cos(np.pi * np.asarray(t, dtype=float)),
                                    name="cos")

    def test_cos_goes_to_sin(self):
        for x in (-0.4, 0.25, 0.9):
            self.assertAlmostEqual(hilbert_periodic(self.cos, x), math.sin(math.pi * x),
                                   delta=1e-6)

    def test_constants_vanish(self):
        one = PeriodicFunction(_ones, name="one")
        self.assertAlmostEqual(hilbert_periodic(one, 0.3), 0.0, delta=1e-8)

    def test_windowed_limit(self):
        limit, gap = windowed_hilbert_limit(self.cos, 0.25)
        self.assertAlmostEqual(limit, math.sin(0.25 * math.pi), delta=1e-4)
        self.assertLess(gap, 1e-3)

    def test_windowed_limit_needs_two_windows(self):
        with self.assertRaises(InvalidInput):
            windowed_hilbert_limit(self.cos, 0.25, windows=(10,))

    def test_periodized_poisson_closed_form(self):
        eps = 0.5
        f = poisson_kernel(eps)
        for x in (0.0, 0.3, -0.8):
            expected = 0.5 * math.sinh(math.pi * eps) / (
                math.cosh(math.pi * eps) - math.cos(math.pi * x))
            self.assertAlmostEqual(periodize(f, x), expected, delta=1e-7)

    def test_fourier_coefficients_preserved(self):
        f = line_bump(0.3, 0.8)
        for n in (0, 1, 3):
            self.assertLess(periodization_fourier_gap(f, n), 1e-8)

    def test_l1_gap(self):
        self.assertAlmostEqual(periodization_l1_gap(line_bump(0.3, 0.8)), 0.0, delta=1e-8)

        def cancelling(t):
            t = np.asarray(t, dtype=float)
            return (np.where((t >= 0) & (t <= 1), 1.0, 0.0)
                    - np.where((t >= 2) & (t <= 3), 1.0, 0.0))

        f = LineFunction(cancelling, DecayClass.COMPACT, (0.0, 3.0), (0.0, 1.0, 2.0, 3.0))
        self.assertAlmostEqual(periodization_l1_gap(f), 2.0, delta=1e-6)


class TestPointValue(unittest.TestCase):
    """Test cases for the pointwise value of f + Hg."""

    def test_g_needs_mean_zero(self):
        with self.assertRaises(InvalidInput):
            valeur_au_point(line_bump(0.0, 1.0), line_bump(0.0, 1.0), 0.2)


if __name__ == '__main__':
    unittest.main()
