"""
Unit tests for Gauss HUP Verifier data models.
"""

import math
import unittest

import numpy as np

from gauss_hup.core_numerics import InvalidInput
from gauss_hup.models import (
    CheckResult,
    DecayClass,
    Grid,
    GridFunction,
    LineFunction,
    MapFamily,
    MapParams,
    PeriodicFunction,
    Report,
    WanderingQuery,
    bump,
    constant,
    indicator,
    kappa,
    lambda1,
    monomial,
    poisson_kernel,
)


class TestGrid(unittest.TestCase):
    """Test cases for composite quadrature grids."""

    def test_nodes_inside_and_weights_sum_to_length(self):
        grid = Grid.composite(-1.0, 1.0, panels=8, order=6)
        self.assertGreater(grid.nodes[0], -1.0)
        self.assertLess(grid.nodes[-1], 1.0)
        self.assertAlmostEqual(float(np.sum(grid.weights)), 2.0, places=12)
        self.assertTrue(grid.symmetric())

    def test_breakpoints_are_panel_edges(self):
        grid = Grid.composite(0.0, 1.0, panels=4, breakpoints=[0.37, 5.0])
        self.assertEqual(grid.breakpoints, (0.37,))
        self.assertFalse(np.any(np.isclose(grid.nodes, 0.37)))

    def test_refined_keeps_resolution(self):
        grid = Grid.composite(0.0, 1.0, panels=4)
        refined = grid.refined([0.3])
        self.assertEqual(refined.panels, 4)
        self.assertIn(0.3, refined.breakpoints)
        self.assertIs(grid.refined([]), grid)

    def test_invalid_interval(self):
        with self.assertRaises(InvalidInput):
            Grid.composite(1.0, 0.0)


class TestClosedForms(unittest.TestCase):
    """Test cases for named closed-form inputs."""

    def test_lambda1(self):
        self.assertAlmostEqual(float(lambda1()(1.0)), 0.5)

    def test_kappa_on_whole_interval(self):
        k = kappa(0.5)
        self.assertAlmostEqual(float(k(0.6)), 0.5 / (0.25 - 0.36))
        self.assertLess(float(k(-0.9)), 0.0)
        self.assertTrue(np.isinf(float(k(0.5))))
        self.assertAlmostEqual(float(k(0.0)), 2.0)
        self.assertEqual(k.breakpoints, (-0.5, 0.5))
        self.assertEqual(k.symmetry, "even")
        self.assertFalse(k.bounded)

    def test_kappa_one_is_positive_convex(self):
        self.assertEqual(kappa(1.0).symmetry, "even-convex-positive")

    def test_kappa_parameter_range(self):
        with self.assertRaises(InvalidInput):
            kappa(1.5)

    def test_indicator_is_closed(self):
        f = indicator(0.2, 0.4)
        np.testing.assert_array_equal(f(np.array([0.1, 0.2, 0.4, 0.5])), [0, 1, 1, 0])

    def test_monomial_symmetry(self):
        self.assertEqual(monomial(3).symmetry, "odd-increasing")
        self.assertEqual(monomial(2).symmetry, "even-convex-positive")

    def test_bump_peak_and_support(self):
        f = bump(0.5, 0.25, 2.0)
        self.assertAlmostEqual(float(f(0.5)), 2.0)
        self.assertEqual(float(f(0.8)), 0.0)

    def test_label(self):
        self.assertEqual(constant(2.0).label, "constant(c=2)")
        self.assertEqual(lambda1().label, "lambda1")


class TestGridFunction(unittest.TestCase):
    """Test cases for sampled functions."""

    def setUp(self):
        self.grid = Grid.composite(0.0, 1.0, panels=8)

    def test_closed_form_evaluation(self):
        f = GridFunction.from_closed_form(self.grid, monomial(2))
        np.testing.assert_allclose(f(np.array([0.5, 0.25])), [0.25, 0.0625])
        self.assertEqual(f.interpolation_error(), 0.0)

    def test_zero_outside_interval(self):
        f = GridFunction.from_closed_form(self.grid, constant(1.0))
        np.testing.assert_array_equal(f(np.array([-0.5, 0.0, 1.5])), [0.0, 0.0, 0.0])

    def test_breakpoints_refine_grid(self):
        f = GridFunction.from_closed_form(self.grid, indicator(0.3, 0.6))
        self.assertIn(0.3, f.grid.breakpoints)
        self.assertIn(0.6, f.grid.breakpoints)

    def test_sampled_interpolation(self):
        f = GridFunction.from_callable(self.grid, np.sin)
        self.assertIsNone(f.closed_form)
        self.assertAlmostEqual(float(f(np.array([0.4]))[0]), math.sin(0.4), places=7)
        self.assertLess(f.interpolation_error(), 1e-6)

    def test_size_mismatch(self):
        with self.assertRaises(InvalidInput):
            GridFunction(self.grid, np.zeros(3))

    def test_disagreeing_closed_form(self):
        with self.assertRaises(InvalidInput):
            GridFunction(self.grid, np.zeros(self.grid.size), constant(1.0))


class TestMapParams(unittest.TestCase):
    """Test cases for map parameters and wandering queries."""

    def test_domains_and_cores(self):
        tau = MapParams.tau(0.5)
        sigma = MapParams.sigma(0.5)
        self.assertEqual(tau.domain, (-1.0, 1.0))
        self.assertEqual(tau.core, (-0.5, 0.5))
        self.assertEqual(sigma.domain, (0.0, 1.0))
        self.assertEqual(sigma.core, (0.0, 0.5))

    def test_family_coercion(self):
        self.assertIs(MapParams("sigma", 0.3).family, MapFamily.SIGMA)

    def test_parameter_range(self):
        for bad in (0.0, -0.2, 1.2):
            with self.assertRaises(InvalidInput):
                MapParams.sigma(bad)
        self.assertEqual(MapParams.tau(1).param, 1.0)

    def test_base_grid_breakpoints(self):
        grid = MapParams.tau(0.5).base_grid(panels=8)
        self.assertEqual(grid.breakpoints, (-0.5, 0.0, 0.5))

    def test_wandering_depth(self):
        with self.assertRaises(InvalidInput):
            WanderingQuery(MapParams.sigma(0.5), 0)
        with self.assertRaises(InvalidInput):
            WanderingQuery(MapParams.sigma(0.5), 1.5)


class TestLineAndPeriodicFunctions(unittest.TestCase):
    """Test cases for functions on the line and the circle."""

    def test_decay_claim_checked(self):
        with self.assertRaises(InvalidInput):
            LineFunction(lambda t: 1.0 / (1.0 + np.abs(t)), DecayClass.INVERSE_SQUARE)

    def test_compact_needs_finite_support(self):
        with self.assertRaises(InvalidInput):
            LineFunction(np.cos, DecayClass.COMPACT)

    def test_zero_outside_support(self):
        f = LineFunction(lambda t: np.ones_like(t), DecayClass.COMPACT, (0.0, 1.0))
        np.testing.assert_array_equal(f(np.array([-1.0, 0.5, 2.0])), [0.0, 1.0, 0.0])
        self.assertEqual(f.breakpoints(), (0.0, 1.0))

    def test_poisson_kernel_mass(self):
        p = poisson_kernel(0.5)
        self.assertAlmostEqual(float(p(0.0)), 1.0 / (0.5 * math.pi))

    def test_periodic_reduce(self):
        self.assertEqual(PeriodicFunction.reduce(3.0), -1.0)
        self.assertAlmostEqual(PeriodicFunction.reduce(2.5), 0.5)

    def test_seam_jump_rejected(self):
        with self.assertRaises(InvalidInput):
            PeriodicFunction(lambda x: x, continuous=True)
        PeriodicFunction(lambda x: x, continuous=False, jumps=[1.0])


class TestCheckAndReport(unittest.TestCase):
    """Test cases for check results and campaign reports."""

    def test_max_check(self):
        check = CheckResult("gap", 1e-9, 1e-8)
        self.assertTrue(check.passed)
        self.assertAlmostEqual(check.margin, 9e-9)

    def test_min_check(self):
        check = CheckResult("distance", 0.1, 0.2, kind="min")
        self.assertFalse(check.passed)
        self.assertLess(check.margin, 0)

    def test_nan_never_passes(self):
        check = CheckResult("gap", float("nan"), 1.0)
        self.assertFalse(check.passed)
        self.assertIsNone(check.to_dict()["measured"])

    def test_invalid_kind(self):
        with self.assertRaises(InvalidInput):
            CheckResult("gap", 0.0, 1.0, kind="between")

    def test_report_pass_and_failures(self):
        report = Report("demo", "anchor", [CheckResult("a", 0.0, 1.0), CheckResult("b", 2.0, 1.0)])
        self.assertFalse(report.passed)
        self.assertEqual([c.description for c in report.failures], ["b"])
        self.assertTrue(Report("empty", "anchor").passed)

    def test_report_timing_opt_in(self):
        report = Report("demo", "anchor", wall_time=1.23456, overrides={"b": 1, "a": 2})
        self.assertNotIn("wall_time_s", report.to_dict())
        self.assertEqual(report.to_dict(include_timing=True)["wall_time_s"], 1.235)
        self.assertEqual(list(report.to_dict()["overrides"]), ["a", "b"])


if __name__ == '__main__':
    unittest.main()
