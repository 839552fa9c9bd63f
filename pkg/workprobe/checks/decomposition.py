"""
Gate-decomposition checks.

- generic: (1⊗σ_x)Ĝ₂(1⊗σ_x)Ĝ₁ = Ĝ(u,τ) on a random instance
- oscillator: (1⊗σ_x)𝒢₂(1⊗σ_x)𝒢₁ against its directly built block form
  at the scenario parameters
"""

import numpy as np

from workprobe.checks.context import CheckContext
from workprobe.core.check import Check, Measurement
from workprobe.core.linalg import ComplexMatrix, expm, frobenius
from workprobe.protocol.gates import (
    OscillatorGates,
    compose_conditional,
    gate_G_general,
    gates_G1_G2,
)

RANDOM_DIM = 16
SCENARIO_SAMPLES = 5


def random_hermitian(rng: np.random.Generator, dim: int) -> ComplexMatrix:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2.0


def random_unitary(rng: np.random.Generator, dim: int) -> ComplexMatrix:
    return expm(random_hermitian(rng, dim), -1j)


def generic_decomposition_error(rng: np.random.Generator, dim: int = RANDOM_DIM) -> float:
    """‖composed − Ĝ(u,τ)‖_F for random Ĥ_i, Ĥ_f, Û_τ and u."""
    h_i = random_hermitian(rng, dim)
    h_f = random_hermitian(rng, dim)
    u_tau = random_unitary(rng, dim)
    u = float(rng.uniform(0.0, 5.0))
    g1, g2 = gates_G1_G2(u, h_i, h_f, u_tau)
    return frobenius(compose_conditional(g1, g2) - gate_G_general(u, h_i, h_f, u_tau))


class DecompositionCheck(Check):
    """Operator identities behind the two-gate construction."""

    name = "decomposition"
    default_tolerance = 1e-8
    description = "conditional-gate decompositions as operator identities"

    def __init__(self, tolerance=None, random_tolerance: float = 1e-10):
        super().__init__(tolerance)
        self.random_tolerance = random_tolerance

    def measure(self, context: CheckContext) -> Measurement:
        generic = generic_decomposition_error(np.random.default_rng(context.seed))
        details = {"generic_error": generic, "generic_dim": RANDOM_DIM}

        oscillator = 0.0
        if context.lambda_initial == 0.0:
            gates = OscillatorGates(context.scenario)
            grid = context.u_grid
            picks = np.unique(np.linspace(0, len(grid) - 1, SCENARIO_SAMPLES).astype(int))
            for u in grid[picks]:
                diff = gates.composed_scriptG(float(u)) - gates.composed_reference(float(u))
                oscillator = max(oscillator, frobenius(diff))
            details["oscillator_error"] = oscillator
            details["oscillator_samples"] = len(picks)
        else:
            details["oscillator_error"] = "skipped: λ_0 ≠ 0"

        return Measurement(
            residual=max(generic, oscillator),
            details=details,
            passed=generic <= self.random_tolerance and oscillator <= self.tolerance,
        )
