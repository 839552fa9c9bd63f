"""
Conditional gates of the Ramsey protocol.

Generic gates (any Ĥ_i, Ĥ_f, Û_τ):
- gate_V, gate_G_simple          commuting case, Ĝ(u)V̂(u)
- gate_G_general, gates_G1_G2    Ĝ(u,τ) = (1⊗σ_x) Ĝ₂ (1⊗σ_x) Ĝ₁

Oscillator gates (ancilla conditions only the drive term):
- OscillatorGates.gate_K          𝒦(τ) = (|0⟩⟨0| + D̂(α_τ)⊗|1⟩⟨1|) e^{−iĤ_free τ}
- OscillatorGates.gate_scriptG    𝒢(u) = e^{−iĤ′_micro(τ) u}
- OscillatorGates.gates_scriptG1_G2, composed_scriptG

Joint operators use (system ⊗ ancilla) ordering.
"""

import cmath
import math
from functools import cached_property
from typing import Optional, Tuple, Union

from workprobe.core.linalg import (
    PROJ_0,
    PROJ_1,
    SIGMA_X,
    SIGMA_Z,
    ComplexMatrix,
    EigenSystem,
    commutes,
    expm,
    hermitian_eig,
    identity,
    kron,
)
from workprobe.oscillator.model import Scenario, eval_drive, final_lambda, h_free, h_osc
from workprobe.oscillator.propagate import closed_form, displacement, inverse_free_evolution
from workprobe.work.stats import NonCommutingError

HamiltonianLike = Union[ComplexMatrix, EigenSystem]

SIMPLE_COMMUTE_TOL = 1e-10


def hadamard_ancilla() -> ComplexMatrix:
    """Ĥ_A = (σ_x + σ_z)/√2; maps |0⟩ to |+⟩."""
    return (SIGMA_X + SIGMA_Z) / math.sqrt(2.0)


def on_ancilla(op: ComplexMatrix, dim_s: int) -> ComplexMatrix:
    """1_S ⊗ op."""
    return kron(identity(dim_s), op)


def controlled(block0: ComplexMatrix, block1: ComplexMatrix) -> ComplexMatrix:
    """block0 ⊗ |0⟩⟨0| + block1 ⊗ |1⟩⟨1|."""
    return kron(block0, PROJ_0) + kron(block1, PROJ_1)


def compose_conditional(g1: ComplexMatrix, g2: ComplexMatrix) -> ComplexMatrix:
    """(1⊗σ_x) G₂ (1⊗σ_x) G₁."""
    flip = on_ancilla(SIGMA_X, g1.shape[0] // 2)
    return flip @ g2 @ flip @ g1


def _exp(h: HamiltonianLike, scale: complex) -> ComplexMatrix:
    return h.exp(scale) if isinstance(h, EigenSystem) else expm(h, scale)


def gate_V(u: float, h_initial: HamiltonianLike) -> ComplexMatrix:
    """V̂(u) = e^{−iĤ_i u} ⊗ 1_A."""
    return kron(_exp(h_initial, -1j * u), identity(2))


def gate_G_simple(u: float, h_initial: ComplexMatrix, h_final: ComplexMatrix) -> ComplexMatrix:
    """
    Ĝ(u) = 1_S ⊗ |0⟩⟨0| + e^{−i(Ĥ_f − Ĥ_i)u} ⊗ |1⟩⟨1|.

    Raises:
        NonCommutingError: if [Ĥ_i, Ĥ_f] ≠ 0 (use the general gate)
    """
    if not commutes(h_initial, h_final, SIMPLE_COMMUTE_TOL):
        raise NonCommutingError("Ĥ_i and Ĥ_f do not commute; the simple gate does not apply")
    dim = h_initial.shape[0]
    return controlled(identity(dim), expm(h_final - h_initial, -1j * u))


def gates_G1_G2(
    u: float,
    h_initial: HamiltonianLike,
    h_final: HamiltonianLike,
    u_tau: ComplexMatrix,
) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """
    Ĝ₁ = 1⊗|0⟩⟨0| + e^{−iĤ_f u}Û_τ⊗|1⟩⟨1|,  Ĝ₂ = 1⊗|0⟩⟨0| + Û_τe^{−iĤ_i u}⊗|1⟩⟨1|.
    """
    one = identity(u_tau.shape[0])
    g1 = controlled(one, _exp(h_final, -1j * u) @ u_tau)
    g2 = controlled(one, u_tau @ _exp(h_initial, -1j * u))
    return g1, g2


def gate_G_general(
    u: float,
    h_initial: HamiltonianLike,
    h_final: HamiltonianLike,
    u_tau: ComplexMatrix,
) -> ComplexMatrix:
    """Ĝ(u,τ) = Û_τe^{−iĤ_i u}⊗|0⟩⟨0| + e^{−iĤ_f u}Û_τ⊗|1⟩⟨1|."""
    return controlled(u_tau @ _exp(h_initial, -1j * u), _exp(h_final, -1j * u) @ u_tau)


class OscillatorGates:
    """
    Gate set generated by Ĥ′_micro for a displaced-oscillator scenario.

    Spectra and the displacement are computed once and reused for every u.
    epsilon multiplies D̂(α_τ) by e^{iε}; the readout does not depend on it.

    Example:
        gates = OscillatorGates(preset_fig2c())
        g1, g2 = gates.gates_scriptG1_G2(u=1.5)
    """

    def __init__(self, scenario: Scenario, epsilon: float = 0.0, tau: Optional[float] = None):
        self.scenario = scenario
        self.tau = scenario.tau if tau is None else tau
        self.epsilon = epsilon
        self.sys = scenario.system()
        self.drive = scenario.effective_drive()

        lam_0 = float(eval_drive(self.drive, 0.0))
        if lam_0 != 0.0:
            raise ValueError(
                f"Oscillator gates assume the process starts at λ_0 = 0, got λ_0 = {lam_0}"
            )
        self.lambda_tau = final_lambda(self.drive, self.tau)

    @cached_property
    def free_spectrum(self) -> EigenSystem:
        return hermitian_eig(h_free(self.sys))

    @cached_property
    def final_spectrum(self) -> EigenSystem:
        return hermitian_eig(h_osc(self.sys, self.lambda_tau, self.scenario.phi))

    @cached_property
    def alpha(self) -> complex:
        return closed_form(
            self.drive, self.scenario.omega, self.scenario.phi, self.tau, self.sys
        ).alpha

    @cached_property
    def displacement(self) -> ComplexMatrix:
        return cmath.exp(1j * self.epsilon) * displacement(self.alpha, self.sys)

    @cached_property
    def free_evolution(self) -> ComplexMatrix:
        return self.free_spectrum.exp(-1j * self.tau)

    @cached_property
    def inverse_free(self) -> ComplexMatrix:
        return inverse_free_evolution(self.scenario.omega, self.tau, self.sys)

    def gate_K(self) -> ComplexMatrix:
        """𝒦(τ) = (1⊗|0⟩⟨0| + D̂(α_τ)⊗|1⟩⟨1|)(e^{−iĤ_free τ}⊗1)."""
        one = identity(self.sys.cutoff)
        return controlled(one, self.displacement) @ kron(self.free_evolution, identity(2))

    def gate_scriptG(self, u: float) -> ComplexMatrix:
        """𝒢(u) = e^{−iĤ_free u}⊗|0⟩⟨0| + e^{−iĤ_osc(λ_τ) u}⊗|1⟩⟨1|."""
        return controlled(self.free_spectrum.exp(-1j * u), self.final_spectrum.exp(-1j * u))

    def gates_scriptG1_G2(self, u: float) -> Tuple[ComplexMatrix, ComplexMatrix]:
        """𝒢₁ = 𝒢(u)𝒦(τ)e^{iĤ_free τ},  𝒢₂ = 𝒦(τ)e^{iĤ_free τ}."""
        g2 = self.gate_K() @ kron(self.inverse_free, identity(2))
        g1 = self.gate_scriptG(u) @ g2
        return g1, g2

    def composed_scriptG(self, u: float) -> ComplexMatrix:
        """(1⊗σ_x)𝒢₂(1⊗σ_x)𝒢₁."""
        g1, g2 = self.gates_scriptG1_G2(u)
        return compose_conditional(g1, g2)

    def composed_reference(self, u: float) -> ComplexMatrix:
        """D̂e^{−iĤ_i u}⊗|0⟩⟨0| + e^{−iĤ_f u}D̂⊗|1⟩⟨1| built directly."""
        d = self.displacement
        return controlled(
            d @ self.free_spectrum.exp(-1j * u),
            self.final_spectrum.exp(-1j * u) @ d,
        )


def gate_K(scenario: Scenario, tau: Optional[float] = None) -> ComplexMatrix:
    return OscillatorGates(scenario, tau=tau).gate_K()


def gate_scriptG(u: float, scenario: Scenario) -> ComplexMatrix:
    return OscillatorGates(scenario).gate_scriptG(u)


def gate_scriptG1_G2(
    u: float, scenario: Scenario, tau: Optional[float] = None
) -> Tuple[ComplexMatrix, ComplexMatrix]:
    return OscillatorGates(scenario, tau=tau).gates_scriptG1_G2(u)


def composed_scriptG(u: float, scenario: Scenario, tau: Optional[float] = None) -> ComplexMatrix:
    return OscillatorGates(scenario, tau=tau).composed_scriptG(u)
