"""Output manager for CSV tables, JSON reports and console summaries."""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import numpy as np

from . import __version__
from .models import Report

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    """
    Render one CSV cell.

    Reals use scientific notation with 15 significant digits so that tables
    can be diffed across runs; missing values are left empty.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.14e}"
    return str(value)


class OutputManager:
    """Handles table and report output with atomic writes."""

    def __init__(self, output_directory: str = "."):
        """
        Initialize output manager.

        Args:
            output_directory: Directory where result files will be written
        """
        self.output_directory = Path(output_directory)
        self.output_directory.mkdir(parents=True, exist_ok=True)

    def _sanitize_filename(self, name: str) -> str:
        """
        Sanitize a string to be safe for use as a filename.

        Args:
            name: Raw string to sanitize

        Returns:
            Sanitized filename-safe string
        """
        sanitized = name.lower().replace(" ", "_")
        sanitized = "".join(c for c in sanitized if c.isalnum() or c in "_-.")
        sanitized = sanitized.strip(".")

        if not sanitized:
            sanitized = "output"

        return sanitized[:80]

    def report_filename(self, campaign_id: str) -> str:
        """Deterministic report file name; reruns overwrite the same file."""
        return f"{self._sanitize_filename(campaign_id)}_report.json"

    def provenance(self, params: Mapping[str, Any], seed: Optional[int] = None) -> Dict[str, Any]:
        """Footer entries: tool version, sorted parameters and seed."""
        footer: Dict[str, Any] = {"tool": f"gauss-hup {__version__}"}
        for key in sorted(params):
            footer[key] = params[key]
        if seed is not None:
            footer["seed"] = seed
        return footer

    def format_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]],
                   footer: Optional[Mapping[str, Any]] = None) -> str:
        """
        Format a table as CSV with a ``# key: value`` provenance footer.

        Args:
            header: Column names
            rows: Row values, one sequence per row
            footer: Provenance and summary entries

        Returns:
            CSV text ending in a newline
        """
        lines = [",".join(header)]
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row has {len(row)} cells, header has {len(header)}")
            lines.append(",".join(format_value(v) for v in row))
        for key, value in (footer or {}).items():
            lines.append(f"# {key}: {self._footer_value(value)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def _footer_value(value: Any) -> str:
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(format_value(v) for v in value) + "]"
        return format_value(value)

    def format_report_json(self, report: Report, include_timing: bool = False) -> str:
        """Report JSON with sorted keys and no timestamps."""
        return json.dumps(report.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def write_csv(self, filename: str, header: Sequence[str], rows: Iterable[Sequence[Any]],
                  footer: Optional[Mapping[str, Any]] = None) -> str:
        """
        Write a CSV table atomically.

        Returns:
            Path to the written file

        Raises:
            OSError: If the file cannot be written
        """
        return self._write(filename, self.format_csv(header, rows, footer))

    def write_json(self, filename: str, data: Any) -> str:
        """Write JSON data atomically with sorted keys."""
        return self._write(filename, json.dumps(data, indent=2, sort_keys=True) + "\n")

    def write_report(self, report: Report, include_timing: bool = False,
                     filename: Optional[str] = None) -> str:
        """
        Write a campaign report as JSON.

        Args:
            report: Report to serialise
            include_timing: Add wall time; the file is then no longer reproducible
            filename: Optional custom filename (derived from the campaign id otherwise)

        Returns:
            Path to the written file
        """
        filename = filename or self.report_filename(report.campaign_id)
        return self._write(filename, self.format_report_json(report, include_timing))

    def _write(self, filename: str, content: str) -> str:
        """Write through a temporary file in the target directory, then rename."""
        file_path = self.output_directory / filename
        fd, temp_path = tempfile.mkstemp(dir=self.output_directory, prefix=".tmp_", suffix=".part")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
                f.write(content)
            os.chmod(temp_path, 0o644)
            os.replace(temp_path, file_path)
        except OSError as e:
            if os.path.exists(temp_path):
                os.unlink(temp_path)
            raise OSError(f"Failed to write '{file_path}': {e}")
        logger.debug("wrote %s (%d bytes)", file_path, len(content))
        return str(file_path)


def format_report_summary(reports: List[Report], include_timing: bool = False) -> str:
    """
    Create a console summary of campaign outcomes.

    Args:
        reports: Campaign reports
        include_timing: Append wall times

    Returns:
        Formatted summary as string
    """
    lines = []
    lines.append("VERIFICATION SUMMARY")
    lines.append("=" * 40)

    for report in reports:
        mark = "✓" if report.passed else "✗"
        total = len(report.checks)
        passed = total - len(report.failures)
        line = f"  {mark} {report.campaign_id}: {passed}/{total} checks"
        if include_timing and report.wall_time is not None:
            line += f" ({report.wall_time:.1f}s)"
        lines.append(line)
        for failure in report.failures:
            lines.append(
                f"      failed: {failure.description} "
                f"(measured {failure.measured:.3e}, bound {failure.bound:.3e})"
            )

    passed = sum(r.passed for r in reports)
    lines.append("")
    lines.append(f"{passed}/{len(reports)} campaigns passed")
    return "\n".join(lines)
