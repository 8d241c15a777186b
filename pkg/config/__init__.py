"""
Configuration Management

Centralized configuration for the workbench:
- Check modes and the per-dimension mode policy
- Random sampling ranges
- Orbit limits
- YAML file and environment settings
"""

from .workbench import CheckMode, ModePolicy, SamplingConfig, OrbitConfig
from .qrtw_config import QrtwConfig, load_workbench_config

__all__ = [
    'CheckMode', 'ModePolicy', 'SamplingConfig', 'OrbitConfig',
    'QrtwConfig', 'load_workbench_config'
]
