"""
Named scenarios.

- fig2c:   n̄ = 1, λ_t = 0.1 tanh(t), τ = 10, Γ = 0.5, N = 64, u ∈ [0, 20] step 0.05
- trivial: λ ≡ 0 (no work done); every fluctuation relation holds exactly
"""

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from workprobe.config.run import ConfigError, RunConfig
from workprobe.oscillator.model import DriveProfile, Scenario
from workprobe.protocol.runner import Variant


def preset_fig2c() -> Scenario:
    """Thermal oscillator (n̄ = 1) under a tanh ramp to λ = 0.1ω, τ = 10/ω, Γ = 5/τ."""
    return Scenario(
        omega=1.0,
        nbar=1.0,
        tau=10.0,
        gamma=0.5,
        cutoff=64,
        drive=DriveProfile.tanh_ramp(0.1, 1.0),
        u_grid=tuple(np.linspace(0.0, 20.0, 401).tolist()),
    )


def preset_trivial() -> Scenario:
    return Scenario(
        omega=1.0,
        nbar=1.0,
        tau=1.0,
        cutoff=32,
        drive=DriveProfile.constant(0.0),
        u_grid=tuple(np.linspace(0.0, 10.0, 101).tolist()),
    )


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    build: Callable[[], Scenario]
    variant: Variant = Variant.APPENDIX

    def run_config(self) -> RunConfig:
        return RunConfig(scenario=self.build(), variant=self.variant)


PRESETS: Dict[str, Preset] = {
    "fig2c": Preset(
        "fig2c",
        "n̄=1, λ_t=0.1ω tanh(ωt), τ=10/ω, Γ=0.5ω, N=64, ωu ∈ [0, 20]",
        preset_fig2c,
    ),
    "trivial": Preset(
        "trivial",
        "λ ≡ 0, n̄=1, τ=1/ω, N=32, ωu ∈ [0, 10]",
        preset_trivial,
    ),
}


def get_preset(name: str) -> Preset:
    """
    Look up a preset by name.

    Raises:
        ConfigError: for an unknown name
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"Unknown preset {name!r}; available: {', '.join(PRESETS)}", "preset"
        ) from None
