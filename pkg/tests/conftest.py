"""Shared samplers and fixtures for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

from cryptoherm import build_h2, build_h3, solve_biorthogonal


def sample_h2_params(rng, margin: float = 1e-3):
    """(a, d, b) with a, d in [-2, 2], |b| <= 1, safely inside the real domain."""
    while True:
        a = rng.uniform(-2.0, 2.0)
        d = rng.uniform(-2.0, 2.0)
        radius = np.sqrt(rng.uniform(0.0, 1.0))
        phi = rng.uniform(0.0, 2.0 * np.pi)
        b = radius * np.exp(1j * phi)
        if (a - d) ** 2 - 4.0 * abs(b) ** 2 > margin:
            return a, d, b


def sample_h2_params_any(rng):
    """(a, d, b) uniform over the full acceptance box, no domain restriction."""
    a = rng.uniform(-2.0, 2.0)
    d = rng.uniform(-2.0, 2.0)
    radius = np.sqrt(rng.uniform(0.0, 1.0))
    phi = rng.uniform(0.0, 2.0 * np.pi)
    return a, d, radius * np.exp(1j * phi)


def sample_h3_params(rng, gap_floor: float = 1e-4):
    """(a, b) for the cyclic model with a non-degenerate spectrum."""
    while True:
        a = rng.uniform(-1.0, 1.0)
        radius = rng.uniform(0.1, 1.0)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        b = radius * np.exp(1j * phi)
        levels = np.sort(
            a + 2.0 * abs(b) * np.cos(np.angle(b) + 2.0 * np.pi * np.arange(3) / 3.0)
        )
        if np.diff(levels).min() > gap_floor:
            return a, b


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def h2_system():
    """The standard interior two-level fixture and its system."""
    h = build_h2(1.0, 0.0, 0.4j)
    return h, solve_biorthogonal(h)


@pytest.fixture
def h3_system():
    h = build_h3(0.0, 0.3 + 0.4j)
    return h, solve_biorthogonal(h)
