"""
Ramsey protocol runner.

Pipeline for one value of u:
1. ρ = ρ_S^th ⊗ |0⟩⟨0|, then 1 ⊗ Ĥ_A
2. the variant's gate sequence, dephasing after each conditional gate
3. 1 ⊗ Ĥ_A, trace out the system
4. χ = ⟨σ_z⟩ + i⟨σ_y⟩ on ρ_A

Variants:
- simple:   Ĝ(u)V̂(u), commuting Ĥ_i, Ĥ_f only
- general:  Ĝ₁, σ_x, Ĝ₂, σ_x with any Û_τ
- appendix: 𝒢₁, σ_x, 𝒢₂, σ_x generated by Ĥ′_micro (oscillator, λ_0 = 0)
"""

import cmath
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from workprobe.core.linalg import (
    PROJ_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ComplexMatrix,
    dagger,
    kron,
    partial_trace_system,
)
from workprobe.logging import get_probe_logger
from workprobe.oscillator.model import Scenario, thermal_state
from workprobe.protocol.dephasing import DephasingModel, dephase_ancilla
from workprobe.protocol.gates import (
    OscillatorGates,
    gate_G_simple,
    gate_V,
    gates_G1_G2,
    hadamard_ancilla,
    on_ancilla,
)
from workprobe.work.process import WorkProcess, forward_process

logger = get_probe_logger(__name__)

TRACE_DRIFT_TOL = 1e-9

# (gate, is_conditional)
GateStep = Tuple[ComplexMatrix, bool]


class Variant(Enum):
    SIMPLE = "simple"
    GENERAL = "general"
    APPENDIX = "appendix"


@dataclass
class ProtocolResult:
    """
    Outcome of one protocol run.

    rho_a is the ancilla state after the final Hadamard; coherence is
    ⟨0|ρ′_A|1⟩ before it, equal to (damping factor)·χ(u)/2.
    """

    u: float
    rho_a: ComplexMatrix
    chi_readout: complex
    coherence: complex
    damped: bool

    @property
    def sigma_z(self) -> float:
        return float(self.chi_readout.real)

    @property
    def sigma_y(self) -> float:
        return float(self.chi_readout.imag)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho_a).min())


def readout(rho_a: ComplexMatrix) -> complex:
    """⟨σ_z⟩ + i⟨σ_y⟩."""
    z = np.real(np.trace(SIGMA_Z @ rho_a))
    y = np.real(np.trace(SIGMA_Y @ rho_a))
    return complex(z, y)


class Protocol:
    """
    Interferometric measurement of χ(u, τ) for one scenario.

    Spectra, the process unitary and the oscillator gate factors are built
    once and shared by every u, so sweeps can run on several threads.

    Example:
        protocol = Protocol(preset_fig2c(), Variant.APPENDIX)
        results = protocol.sweep(scenario.u_grid, workers=4)
        chi = [r.chi_readout for r in results]
    """

    def __init__(
        self,
        scenario: Scenario,
        variant: Variant = Variant.APPENDIX,
        dephasing: Optional[DephasingModel] = None,
        process: Optional[WorkProcess] = None,
        epsilon: float = 0.0,
    ):
        """
        Initialize protocol.

        Args:
            scenario: Experiment description
            variant: Gate sequence to use
            dephasing: Ancilla dephasing model (None runs noiselessly)
            process: Work process for the simple and general variants
                     (default: closed-form forward process of the scenario)
            epsilon: Phase e^{iε} put on the displacement (or on Û_τ for general)
        """
        self.scenario = scenario
        self.variant = variant
        self.dephasing = dephasing
        self.epsilon = epsilon
        self._process = process

        if variant is Variant.APPENDIX:
            # Fails early when λ_0 ≠ 0
            self._gates = OscillatorGates(scenario, epsilon=epsilon)
        if variant is Variant.SIMPLE:
            # Fails early on non-commuting Hamiltonians
            gate_G_simple(0.0, self.process.h_initial, self.process.h_final)

    @cached_property
    def process(self) -> WorkProcess:
        return self._process if self._process is not None else forward_process(self.scenario)

    @cached_property
    def system_state(self) -> ComplexMatrix:
        if self.variant is Variant.APPENDIX:
            return thermal_state(self._gates.free_spectrum, self.scenario.beta)
        return self.process.rho0

    @property
    def dim_s(self) -> int:
        return int(self.system_state.shape[0])

    @cached_property
    def _hadamard(self) -> ComplexMatrix:
        return on_ancilla(hadamard_ancilla(), self.dim_s)

    @cached_property
    def _flip(self) -> ComplexMatrix:
        return on_ancilla(SIGMA_X, self.dim_s)

    @cached_property
    def _prepared(self) -> ComplexMatrix:
        h = hadamard_ancilla()
        return kron(self.system_state, h @ PROJ_0 @ h)

    @cached_property
    def _unitary(self) -> ComplexMatrix:
        return cmath.exp(1j * self.epsilon) * self.process.unitary

    def gate_sequence(self, u: float) -> List[GateStep]:
        """Gates applied between the two Hadamards, in time order."""
        if self.variant is Variant.SIMPLE:
            process = self.process
            return [
                (gate_V(u, process.initial_spectrum), False),
                (gate_G_simple(u, process.h_initial, process.h_final), True),
            ]

        if self.variant is Variant.GENERAL:
            process = self.process
            g1, g2 = gates_G1_G2(u, process.initial_spectrum, process.final_spectrum, self._unitary)
        else:
            g1, g2 = self._gates.gates_scriptG1_G2(u)
        return [(g1, True), (self._flip, False), (g2, True), (self._flip, False)]

    def run(self, u: float) -> ProtocolResult:
        """
        Run the protocol at one u.

        Raises:
            RuntimeError: if the joint state loses trace by more than 1e-9
        """
        steps = self.gate_sequence(u)
        n_conditional = sum(1 for _, conditional in steps if conditional)
        exposure = 0.0
        if self.dephasing is not None:
            exposure = self.dephasing.duration(u) / n_conditional

        rho = self._prepared
        for gate, conditional in steps:
            rho = gate @ rho @ dagger(gate)
            if conditional and self.dephasing is not None:
                rho = dephase_ancilla(rho, self.dephasing.gamma, exposure)
            self._check_trace(rho, u)

        rho_a_before = partial_trace_system(rho, self.dim_s, 2)
        rho = self._hadamard @ rho @ dagger(self._hadamard)
        rho_a = partial_trace_system(rho, self.dim_s, 2)

        return ProtocolResult(
            u=float(u),
            rho_a=rho_a,
            chi_readout=readout(rho_a),
            coherence=complex(rho_a_before[0, 1]),
            damped=self.dephasing is not None and self.dephasing.gamma > 0,
        )

    def sweep(self, u_grid: Sequence[float], workers: int = 1) -> List[ProtocolResult]:
        """
        Run over a u-grid; results follow grid order.

        Args:
            u_grid: Values of u
            workers: Thread count (1 runs sequentially)
        """
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")

        start = time.time()
        # Build shared factors before the threads start
        _ = self._prepared, self._hadamard, self._flip
        if self.variant is Variant.APPENDIX:
            gates = self._gates
            _ = gates.final_spectrum, gates.displacement, gates.free_evolution, gates.inverse_free
        else:
            _ = self.process.initial_spectrum, self.process.final_spectrum, self._unitary

        if workers == 1:
            results = [self.run(u) for u in u_grid]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(self.run, u_grid))

        logger.debug(
            f"Swept {len(results)} points ({self.variant.value}, workers={workers}) "
            f"in {time.time() - start:.2f}s"
        )
        return results

    @staticmethod
    def _check_trace(rho: ComplexMatrix, u: float) -> None:
        drift = abs(np.trace(rho) - 1.0)
        if drift > TRACE_DRIFT_TOL:
            raise RuntimeError(f"Joint state lost normalisation at u={u}: |Tr ρ − 1| = {drift:.3e}")


def run_protocol(
    u: float,
    scenario: Scenario,
    variant: Variant = Variant.APPENDIX,
    dephasing: Optional[DephasingModel] = None,
    process: Optional[WorkProcess] = None,
    epsilon: float = 0.0,
) -> ProtocolResult:
    """One-shot Protocol(...).run(u)."""
    return Protocol(scenario, variant, dephasing, process, epsilon).run(u)
