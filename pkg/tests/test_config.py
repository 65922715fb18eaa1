"""
Unit tests for Gauss HUP Verifier configuration management.
"""

import json
import os
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from gauss_hup.config import (
    ConfigManager,
    NumericsConfig,
    apply_env_overrides,
    get_default_config,
)


class TestConfigManager(unittest.TestCase):
    """Test cases for file-backed configuration."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.config_dir = Path(self.temp_dir) / "cfg"

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_creates_default_file(self):
        manager = ConfigManager(self.config_dir)
        self.assertTrue(manager.config_file.exists())
        with open(manager.config_file, encoding="utf-8") as f:
            data = json.load(f)
        self.assertEqual(data["j_max"], 10000)
        self.assertEqual(data["eps_schedule"], [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])

    def test_loads_existing_values(self):
        self.config_dir.mkdir(parents=True)
        with open(self.config_dir / "config.json", "w", encoding="utf-8") as f:
            json.dump({"tail_tol": 1e-10, "not_an_option": 3}, f)
        config = ConfigManager(self.config_dir).get_config()
        self.assertEqual(config.tail_tol, 1e-10)
        self.assertFalse(hasattr(config, "not_an_option"))

    def test_corrupt_file_is_backed_up(self):
        self.config_dir.mkdir(parents=True)
        (self.config_dir / "config.json").write_text("{ not json", encoding="utf-8")
        manager = ConfigManager(self.config_dir)
        self.assertTrue((self.config_dir / "config.json.backup").exists())
        self.assertEqual(manager.get_config(), NumericsConfig())

    def test_update_and_reset(self):
        manager = ConfigManager(self.config_dir)
        manager.update_config(j_max=20000)
        self.assertEqual(ConfigManager(self.config_dir).get_config().j_max, 20000)
        with self.assertRaises(ValueError):
            manager.update_config(bogus=1)
        manager.reset_to_defaults()
        self.assertEqual(ConfigManager(self.config_dir).get_config().j_max, 10000)

    def test_directory_from_environment(self):
        with patch.dict(os.environ, {"GAUSS_HUP_CONFIG_DIR": str(self.config_dir)}):
            manager = ConfigManager()
        self.assertEqual(manager.config_dir, self.config_dir)
        self.assertTrue(manager.get_logs_dir().is_dir())


class TestEnvironmentOverrides(unittest.TestCase):
    """Test cases for environment variable overrides."""

    def test_overrides_applied(self):
        env = {
            "GAUSS_HUP_J_MAX": "512",
            "GAUSS_HUP_EPS_SCHEDULE": "1e-2, 1e-3,1e-4",
            "GAUSS_HUP_VERBOSE": "TRUE",
            "GAUSS_HUP_OUTPUT_DIR": "/tmp/reports",
        }
        with patch.dict(os.environ, env):
            config = apply_env_overrides(get_default_config())
        self.assertEqual(config.j_max, 512)
        self.assertEqual(config.eps_schedule, [1e-2, 1e-3, 1e-4])
        self.assertTrue(config.verbose_output)
        self.assertEqual(config.default_output_dir, "/tmp/reports")

    def test_invalid_values_ignored(self):
        with patch.dict(os.environ, {"GAUSS_HUP_J_MAX": "lots", "GAUSS_HUP_EPS_SCHEDULE": ","}):
            config = apply_env_overrides(get_default_config())
        self.assertEqual(config.j_max, 10000)
        self.assertEqual(len(config.eps_schedule), 5)


if __name__ == '__main__':
    unittest.main()
