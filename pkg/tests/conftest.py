"""
Shared fixtures for workprobe tests.

Unit tests use reduced cutoffs (N ≤ 40); fig2c_short keeps the full N = 64.
"""

from dataclasses import replace

import numpy as np
import pytest

from workprobe.config import preset_fig2c
from workprobe.oscillator.model import OscillatorSystem


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


@pytest.fixture
def small_system():
    return OscillatorSystem(omega=1.0, cutoff=16)


@pytest.fixture
def ramp_scenario():
    """fig2c physics on a coarse grid and N = 40."""
    return replace(
        preset_fig2c(),
        cutoff=40,
        u_grid=tuple(np.linspace(0.0, 20.0, 21).tolist()),
    )


@pytest.fixture
def fig2c_short():
    """fig2c at full cutoff on a 41-point grid."""
    return replace(preset_fig2c(), u_grid=tuple(np.linspace(0.0, 20.0, 41).tolist()))
