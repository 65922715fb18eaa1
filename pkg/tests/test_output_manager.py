"""
Unit tests for Gauss HUP Verifier output manager.
"""

import json
import os
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from gauss_hup import __version__
from gauss_hup.models import CheckResult, Report
from gauss_hup.output_manager import OutputManager, format_report_summary, format_value


class TestFormatValue(unittest.TestCase):
    """Test cases for CSV cell rendering."""

    def test_reals_use_fixed_precision(self):
        """Test that reals render with 15 significant digits."""
        self.assertEqual(format_value(0.5), "5.00000000000000e-01")
        self.assertEqual(format_value(-1e-12), "-1.00000000000000e-12")

    def test_special_values(self):
        """Test missing, boolean, integer and non-finite cells."""
        self.assertEqual(format_value(None), "")
        self.assertEqual(format_value(True), "true")
        self.assertEqual(format_value(7), "7")
        self.assertEqual(format_value(float("nan")), "nan")
        self.assertEqual(format_value(float("-inf")), "-inf")
        self.assertEqual(format_value("m=1"), "m=1")


class TestOutputManager(unittest.TestCase):
    """Test cases for OutputManager class."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()
        self.output_manager = OutputManager(self.temp_dir)

    def tearDown(self):
        """Clean up test fixtures."""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_creates_directory(self):
        """Test that OutputManager creates its output directory."""
        new_dir = os.path.join(self.temp_dir, "nested", "out")
        OutputManager(new_dir)
        self.assertTrue(Path(new_dir).is_dir())

    def test_sanitize_filename(self):
        """Test filename sanitization."""
        test_cases = [
            ("iterate SubS 0.5", "iterate_subs_0.5"),
            ("critical(alpha=2)", "criticalalpha2"),
            ("...", "output"),
            ("prop-kappa1", "prop-kappa1"),
            ("eq-Uop.Wop", "eq-uop.wop"),
        ]
        for raw, expected in test_cases:
            self.assertEqual(self.output_manager._sanitize_filename(raw), expected)

    def test_report_filename_is_deterministic(self):
        """Test that reruns target the same report file."""
        self.assertEqual(self.output_manager.report_filename("lem-5.8.1"),
                         "lem-5.8.1_report.json")

    def test_provenance_sorted(self):
        """Test that provenance lists the tool, sorted parameters and seed."""
        footer = self.output_manager.provenance({"beta": 0.5, "alpha": 2}, seed=3)
        self.assertEqual(list(footer), ["tool", "alpha", "beta", "seed"])
        self.assertEqual(footer["tool"], f"gauss-hup {__version__}")

    def test_format_csv(self):
        """Test CSV body and footer layout."""
        text = self.output_manager.format_csv(
            ["n", "value"], [(0, 1.0), (1, None)], {"param": 0.5, "ns": [1, 2]})
        lines = text.splitlines()
        self.assertEqual(lines[0], "n,value")
        self.assertEqual(lines[1], "0,1.00000000000000e+00")
        self.assertEqual(lines[2], "1,")
        self.assertEqual(lines[3], "# param: 5.00000000000000e-01")
        self.assertEqual(lines[4], "# ns: [1, 2]")
        self.assertTrue(text.endswith("\n"))

    def test_row_length_mismatch(self):
        """Test that ragged rows are rejected."""
        with self.assertRaises(ValueError):
            self.output_manager.format_csv(["a", "b"], [(1,)])

    def test_write_csv(self):
        """Test writing a table leaves no temporary files behind."""
        path = self.output_manager.write_csv("table.csv", ["x"], [(1.5,)])
        self.assertEqual(Path(path).read_text(encoding="utf-8"), "x\n1.50000000000000e+00\n")
        self.assertEqual(os.listdir(self.temp_dir), ["table.csv"])

    def test_failed_write_cleans_up(self):
        """Test that a failed rename removes the temporary file."""
        with patch("gauss_hup.output_manager.os.replace", side_effect=OSError("disk full")):
            with self.assertRaises(OSError) as cm:
                self.output_manager.write_json("data.json", {"a": 1})
        self.assertIn("disk full", str(cm.exception))
        self.assertEqual(os.listdir(self.temp_dir), [])

    def test_write_report(self):
        """Test report JSON is sorted and free of timings by default."""
        report = Report("demo", "anchor", [CheckResult("gap", 1e-9, 1e-8)], seed=1,
                        wall_time=2.5)
        path = self.output_manager.write_report(report)
        self.assertTrue(path.endswith("demo_report.json"))
        text = Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
        self.assertTrue(data["passed"])
        self.assertNotIn("wall_time_s", data)
        self.assertEqual(text, json.dumps(data, indent=2, sort_keys=True) + "\n")

        timed = json.loads(Path(self.output_manager.write_report(
            report, include_timing=True, filename="timed.json")).read_text(encoding="utf-8"))
        self.assertEqual(timed["wall_time_s"], 2.5)


class TestReportSummary(unittest.TestCase):
    """Test cases for the console summary."""

    def test_summary(self):
        """Test pass marks, failures and totals."""
        reports = [
            Report("good", "a", [CheckResult("ok", 0.0, 1.0)], wall_time=1.0),
            Report("bad", "b", [CheckResult("ok", 0.0, 1.0), CheckResult("gap", 2.0, 1.0)]),
        ]
        summary = format_report_summary(reports)
        self.assertIn("✓ good: 1/1 checks", summary)
        self.assertIn("✗ bad: 1/2 checks", summary)
        self.assertIn("failed: gap (measured 2.000e+00, bound 1.000e+00)", summary)
        self.assertIn("1/2 campaigns passed", summary)
        self.assertNotIn("1.0s", summary)
        self.assertIn("(1.0s)", format_report_summary(reports, include_timing=True))


if __name__ == '__main__':
    unittest.main()
