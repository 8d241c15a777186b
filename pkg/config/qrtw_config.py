"""
Workbench Configuration Loader

Parses qrtw-config.yml and resolves the random seed from the command line,
the QRTW_SEED environment variable or the file, in that order.
"""

import os
import logging
from pathlib import Path
from typing import Dict, Any, Optional

import yaml
from dotenv import load_dotenv

from .workbench import CheckMode, ModePolicy, OrbitConfig, SamplingConfig

load_dotenv()

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "qrtw-config.yml"
SEED_ENV_VAR = "QRTW_SEED"


class QrtwConfig:
    """Handles qrtw-config.yml parsing and hands out typed configuration."""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = str(config_path or DEFAULT_CONFIG_PATH)
        self.config: Dict[str, Any] = {}
        self.load_config()

    def load_config(self):
        """Load and parse the YAML configuration file."""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                self.config = yaml.safe_load(file) or {}
            logger.debug(f"Loaded configuration from {self.config_path}")
        except FileNotFoundError:
            logger.warning(f"No {self.config_path} found, using defaults")
            self.config = self.get_default_config()
        except yaml.YAMLError as e:
            logger.error(f"Error parsing {self.config_path}: {e}")
            raise

    def get_default_config(self) -> Dict[str, Any]:
        """Return the built-in configuration."""
        return {
            "verification": {
                "seed": 0,
                "trials": 200,
                "mode_4d": "exact",
                "mode_6d": "randomized",
                "exact_degree_cap": 64,
                "overrides": {}
            },
            "sampling": {"low": 1, "high": 2 ** 32, "max_rejections": 1000},
            "orbit": {"steps": 20, "bit_cap": 2 ** 16, "float_tolerance": 1e-9}
        }

    def get_verification_config(self) -> Dict[str, Any]:
        return self.config.get("verification", {})

    def get_sampling_config(self) -> SamplingConfig:
        section = self.config.get("sampling", {})
        return SamplingConfig(
            low=int(section.get("low", 1)),
            high=int(section.get("high", 2 ** 32)),
            max_rejections=int(section.get("max_rejections", 1000))
        )

    def get_orbit_config(self) -> OrbitConfig:
        section = self.config.get("orbit", {})
        return OrbitConfig(
            steps=int(section.get("steps", 20)),
            bit_cap=int(section.get("bit_cap", 2 ** 16)),
            float_tolerance=float(section.get("float_tolerance", 1e-9))
        )

    def get_mode_policy(self, seed: Optional[int] = None) -> ModePolicy:
        """Build the mode policy, with the seed resolved by resolve_seed."""
        section = self.get_verification_config()
        overrides = {
            check_id: CheckMode(mode)
            for check_id, mode in (section.get("overrides") or {}).items()
        }
        return ModePolicy(
            mode_4d=CheckMode(section.get("mode_4d", "exact")),
            mode_6d=CheckMode(section.get("mode_6d", "randomized")),
            trials=int(section.get("trials", 200)),
            seed=self.resolve_seed(seed),
            overrides=overrides,
            sampling=self.get_sampling_config(),
            exact_degree_cap=_optional_int(section.get("exact_degree_cap", 64))
        )

    def resolve_seed(self, explicit: Optional[int] = None) -> int:
        """Explicit value, then QRTW_SEED, then the file, then 0."""
        if explicit is not None:
            return int(explicit)
        env_seed = os.getenv(SEED_ENV_VAR)
        if env_seed not in (None, ""):
            try:
                return int(env_seed)
            except ValueError:
                raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env_seed!r}")
        return int(self.get_verification_config().get("seed", 0))


def _optional_int(value) -> Optional[int]:
    return None if value is None else int(value)


def load_workbench_config(config_path: Optional[str] = None) -> QrtwConfig:
    """Load the workbench configuration from the given path or the default one."""
    return QrtwConfig(config_path)
