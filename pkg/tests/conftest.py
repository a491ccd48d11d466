"""Shared fixtures; puts src/ on the import path the way main.py does when run from source."""

import os
import sys

import numpy as np
import pytest

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(_PROJECT_ROOT, 'src'))

from biphoton_core import random_coeffs  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def random_ensemble():
    """Fifty seeded random coefficient sets."""
    return [random_coeffs(np.random.default_rng([7, i])) for i in range(50)]
