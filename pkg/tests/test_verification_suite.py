"""
Unit tests for the campaign registry and runner.
"""

import unittest

import numpy as np

from gauss_hup.core_numerics import InvalidInput
from gauss_hup.models import CheckResult
from gauss_hup.verification_suite import (
    ANCHORS,
    Campaign,
    UnknownCampaign,
    anchor_coverage,
    get_campaign,
    list_campaigns,
    random_smooth_form,
    register,
    registry_listing,
    run_all,
    run_campaign,
)


def _draw(ctx):
    return [CheckResult("draw", ctx.rng.random() * ctx["scale"], 10.0)]


def _toy_registry():
    return {
        "toy": Campaign("toy", "Draw one number.", _draw, {"scale": 1.0}),
        "failing": Campaign("failing", "always fails",
                            lambda ctx: [CheckResult("too big", 2.0, 1.0)]),
    }


class TestRegistry(unittest.TestCase):
    """Test cases for campaign registration and lookup."""

    def test_ids_are_the_anchor_list(self):
        self.assertEqual(sorted(c.id for c in list_campaigns()), sorted(ANCHORS))
        self.assertEqual(len(set(ANCHORS)), len(ANCHORS))

    def test_anchor_equals_id(self):
        for campaign in list_campaigns():
            self.assertEqual(campaign.anchor, campaign.id)

    def test_anchor_coverage_complete(self):
        self.assertEqual(anchor_coverage(), ([], []))

    def test_anchor_coverage_diff(self):
        missing, extra = anchor_coverage(_toy_registry(), ("toy", "prop-kappa1"))
        self.assertEqual(missing, ["prop-kappa1"])
        self.assertEqual(extra, ["failing"])

    def test_named_anchors_registered(self):
        for anchor in ("prop-kappa1", "lem-5.8.1", "prop-3.5"):
            self.assertEqual(get_campaign(anchor).id, anchor)

    def test_every_campaign_described(self):
        listing = registry_listing()
        self.assertEqual(set(listing), set(ANCHORS))
        self.assertTrue(all(listing.values()))

    def test_listing_is_sorted(self):
        ids = [c.id for c in list_campaigns()]
        self.assertEqual(ids, sorted(ids))

    def test_unknown_campaign_lists_valid_ids(self):
        with self.assertRaises(UnknownCampaign) as cm:
            get_campaign("bogus", _toy_registry())
        self.assertIn("bogus", str(cm.exception))
        self.assertIn("failing, toy", str(cm.exception))

    def test_unlisted_anchor_rejected(self):
        with self.assertRaises(InvalidInput):
            register("invariant-densities")

    def test_duplicate_registration(self):
        with self.assertRaises(InvalidInput):
            register("cor-onebranch")(lambda ctx: [])

    def test_descriptions_from_docstrings(self):
        self.assertEqual(get_campaign("cor-onebranch").description,
                         "The sine/cosine-integral spiral stays away from the origin.")


class TestRunner(unittest.TestCase):
    """Test cases for running campaigns."""

    def test_empty_registry(self):
        self.assertEqual(run_all(registry={}), [])

    def test_overrides_filtered(self):
        report = run_campaign("toy", {"scale": 2, "bogus": 3}, registry=_toy_registry())
        self.assertEqual(report.overrides, {"scale": 2})

    def test_same_seed_same_report(self):
        first = run_campaign("toy", seed=7, registry=_toy_registry())
        second = run_campaign("toy", seed=7, registry=_toy_registry())
        other = run_campaign("toy", seed=8, registry=_toy_registry())
        self.assertEqual(first.to_dict(), second.to_dict())
        self.assertNotEqual(first.checks[0].measured, other.checks[0].measured)

    def test_run_all_in_id_order(self):
        reports = run_all(registry=_toy_registry())
        self.assertEqual([r.campaign_id for r in reports], ["failing", "toy"])
        self.assertEqual([r.passed for r in reports], [False, True])

    def test_spiral_campaign_passes(self):
        report = run_campaign("cor-onebranch")
        self.assertTrue(report.passed, [c.description for c in report.failures])
        self.assertEqual(report.anchor, "cor-onebranch")
        self.assertEqual(report.to_dict()["anchor"], "cor-onebranch")
        self.assertIsNotNone(report.wall_time)
        self.assertNotIn("wall_time_s", report.to_dict())


class TestRandomForms(unittest.TestCase):
    """Test cases for seeded random test functions."""

    def test_reproducible(self):
        xs = np.linspace(-1.0, 1.0, 11)
        a = random_smooth_form(np.random.default_rng(3), (-1.0, 1.0))
        b = random_smooth_form(np.random.default_rng(3), (-1.0, 1.0))
        np.testing.assert_array_equal(a(xs), b(xs))

    def test_finite(self):
        form = random_smooth_form(np.random.default_rng(5), (0.0, 1.0), cosines_only=True)
        self.assertTrue(np.all(np.isfinite(form(np.linspace(0.0, 1.0, 21)))))


if __name__ == '__main__':
    unittest.main()
