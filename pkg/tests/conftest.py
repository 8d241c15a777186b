"""Shared pytest setup: repository root on sys.path and small function fields."""

import sys
from pathlib import Path

import pytest

# Add repository root to Python path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import CheckMode, ModePolicy  # noqa: E402
from src.qrtw.algebra import Certifier, FunctionField  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs the full check suite of a catalogue example")


@pytest.fixture
def plane():
    """x, y with one parameter a."""
    return FunctionField(('x', 'y'), ('a',))


@pytest.fixture
def exact(plane):
    return Certifier(plane, CheckMode.EXACT)


@pytest.fixture
def randomized(plane):
    return Certifier(plane, CheckMode.RANDOMIZED, trials=50, seed=7)


@pytest.fixture
def exact_policy():
    return ModePolicy.all_exact(seed=1)
