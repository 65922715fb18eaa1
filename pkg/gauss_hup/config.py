"""Configuration management for Gauss HUP Verifier."""

import json
import os
from pathlib import Path
from typing import List, Optional
from dataclasses import dataclass, asdict, field


def _default_eps_schedule() -> List[float]:
    return [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]


@dataclass
class NumericsConfig:
    """User-tunable numerical defaults."""

    # Quadrature
    quad_tol: float = 1e-8
    pv_tol: float = 1e-6
    eps_schedule: List[float] = field(default_factory=_default_eps_schedule)
    richardson_order: int = 2
    osc_tail_panels: int = 200

    # Operator series
    j_max: int = 10000
    tail_tol: float = 1e-8

    # Grids
    grid_panels: int = 32
    grid_order: int = 8
    wandering_resolution: int = 100000

    # Campaigns
    seed: int = 0

    # Output preferences
    default_output_dir: str = "."
    verbose_output: bool = False


class ConfigManager:
    """Manages numerical configuration with file persistence."""

    DEFAULT_CONFIG_DIR = Path.home() / ".gauss_hup"
    DEFAULT_CONFIG_FILE = "config.json"

    def __init__(self, config_dir: Optional[Path] = None):
        """
        Initialize configuration manager.

        Args:
            config_dir: Custom configuration directory (defaults to
                $GAUSS_HUP_CONFIG_DIR, then ~/.gauss_hup)
        """
        env_dir = os.getenv("GAUSS_HUP_CONFIG_DIR")
        self.config_dir = Path(config_dir or env_dir or self.DEFAULT_CONFIG_DIR)
        self.config_file = self.config_dir / self.DEFAULT_CONFIG_FILE
        self._config = NumericsConfig()

        self.config_dir.mkdir(parents=True, exist_ok=True)
        self.load_config()

    def load_config(self) -> NumericsConfig:
        """
        Load configuration from file.

        A corrupt file is moved aside to ``config.json.backup`` and replaced
        by the defaults.

        Returns:
            Loaded configuration object
        """
        if self.config_file.exists():
            try:
                with open(self.config_file, "r", encoding="utf-8") as f:
                    config_data = json.load(f)

                for key, value in config_data.items():
                    if hasattr(self._config, key):
                        setattr(self._config, key, value)

            except (json.JSONDecodeError, OSError):
                if self.config_file.exists():
                    backup_file = self.config_file.with_suffix(".json.backup")
                    self.config_file.replace(backup_file)
                self._config = NumericsConfig()
                self.save_config()
        else:
            self.save_config()

        return self._config

    def save_config(self) -> None:
        """Save current configuration to file."""
        try:
            config_data = asdict(self._config)

            with open(self.config_file, "w", encoding="utf-8") as f:
                json.dump(config_data, f, indent=2, sort_keys=True)

        except OSError as e:
            raise RuntimeError(f"Failed to save configuration: {e}")

    def get_config(self) -> NumericsConfig:
        """Get current configuration."""
        return self._config

    def update_config(self, **kwargs) -> None:
        """
        Update configuration values.

        Args:
            **kwargs: Configuration values to update

        Raises:
            ValueError: If a key is not a configuration option
        """
        for key, value in kwargs.items():
            if hasattr(self._config, key):
                setattr(self._config, key, value)
            else:
                raise ValueError(f"Unknown configuration option: {key}")

        self.save_config()

    def reset_to_defaults(self) -> None:
        """Reset configuration to default values."""
        self._config = NumericsConfig()
        self.save_config()

    def get_logs_dir(self) -> Path:
        """Get logs directory path."""
        logs_dir = self.config_dir / "logs"
        logs_dir.mkdir(exist_ok=True)
        return logs_dir


def get_default_config() -> NumericsConfig:
    """Get default configuration without file persistence."""
    return NumericsConfig()


def _parse_float_list(text: str) -> List[float]:
    values = [float(part) for part in text.split(",") if part.strip()]
    if not values:
        raise ValueError("empty list")
    return values


def _parse_bool(text: str) -> bool:
    return text.lower() == "true"


# Environment variable overrides
def apply_env_overrides(config: NumericsConfig) -> NumericsConfig:
    """
    Apply environment variable overrides to configuration.

    Args:
        config: Base configuration to override

    Returns:
        Configuration with environment overrides applied
    """
    env_mappings = {
        "GAUSS_HUP_QUAD_TOL": ("quad_tol", float),
        "GAUSS_HUP_PV_TOL": ("pv_tol", float),
        "GAUSS_HUP_EPS_SCHEDULE": ("eps_schedule", _parse_float_list),
        "GAUSS_HUP_OSC_TAIL_PANELS": ("osc_tail_panels", int),
        "GAUSS_HUP_J_MAX": ("j_max", int),
        "GAUSS_HUP_TAIL_TOL": ("tail_tol", float),
        "GAUSS_HUP_GRID_PANELS": ("grid_panels", int),
        "GAUSS_HUP_WANDERING_RESOLUTION": ("wandering_resolution", int),
        "GAUSS_HUP_SEED": ("seed", int),
        "GAUSS_HUP_OUTPUT_DIR": ("default_output_dir", str),
        "GAUSS_HUP_VERBOSE": ("verbose_output", _parse_bool),
    }

    for env_var, (attr_name, converter) in env_mappings.items():
        env_value = os.getenv(env_var)
        if env_value is not None:
            try:
                converted_value = converter(env_value)
                setattr(config, attr_name, converted_value)
            except (ValueError, TypeError):
                # Ignore invalid environment values
                pass

    return config
