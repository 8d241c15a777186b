"""
Workbench Configuration

Configuration classes for identity checking, random sampling and orbit runs.
"""

from dataclasses import dataclass
from typing import Dict, Optional
from enum import Enum


class CheckMode(Enum):
    """How an identity is certified."""
    EXACT = "exact"
    RANDOMIZED = "randomized"


@dataclass
class SamplingConfig:
    """Ranges for random rational points used by randomized checks."""
    low: int = 1
    high: int = 2 ** 32  # numerators and denominators are drawn from [low, high]
    max_rejections: int = 1000  # resamples per trial when a denominator vanishes

    @property
    def sample_space(self) -> int:
        return self.high - self.low + 1


@dataclass
class ModePolicy:
    """Chooses exact or randomized checking per check and per dimension."""
    mode_4d: CheckMode = CheckMode.EXACT
    mode_6d: CheckMode = CheckMode.RANDOMIZED
    trials: int = 200
    seed: int = 0
    overrides: Dict[str, CheckMode] = None
    sampling: SamplingConfig = None
    exact_degree_cap: Optional[int] = 64  # checks above this degree bound run randomized

    def __post_init__(self):
        if self.overrides is None:
            self.overrides = {}
        if self.sampling is None:
            self.sampling = SamplingConfig()

    def mode_for(self, check_id: str, ambient_dim: int, degree: Optional[int] = None) -> CheckMode:
        """Override for the check id wins, then the degree cap, then the dimension default."""
        if check_id in self.overrides:
            return self.overrides[check_id]
        mode = self.mode_4d if ambient_dim <= 4 else self.mode_6d
        if mode is CheckMode.EXACT and degree is not None and self.exact_degree_cap is not None:
            if degree > self.exact_degree_cap:
                return CheckMode.RANDOMIZED
        return mode

    @classmethod
    def default(cls, seed: int = 0) -> 'ModePolicy':
        """Exact in 4d below the degree cap, randomized(200) otherwise."""
        return cls(seed=seed)

    @classmethod
    def all_exact(cls, seed: int = 0) -> 'ModePolicy':
        return cls(mode_4d=CheckMode.EXACT, mode_6d=CheckMode.EXACT, seed=seed, exact_degree_cap=None)

    @classmethod
    def all_randomized(cls, trials: int = 200, seed: int = 0) -> 'ModePolicy':
        """Pointwise checks everywhere; much faster on the 4d examples too."""
        return cls(
            mode_4d=CheckMode.RANDOMIZED,
            mode_6d=CheckMode.RANDOMIZED,
            trials=trials,
            seed=seed
        )


@dataclass
class OrbitConfig:
    """Limits for orbit iteration."""
    steps: int = 20
    bit_cap: int = 2 ** 16  # bits per numerator or denominator in exact mode
    float_tolerance: float = 1e-9

    @classmethod
    def for_float(cls, tolerance: float = 1e-9, steps: int = 10) -> 'OrbitConfig':
        return cls(steps=steps, float_tolerance=tolerance)
