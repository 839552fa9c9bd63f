"""
Unit tests for interferometer gates.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from workprobe.checks.decomposition import generic_decomposition_error, random_hermitian
from workprobe.core.linalg import (
    PROJ_0,
    SIGMA_X,
    SIGMA_Z,
    expm,
    frobenius,
    identity,
    unitarity_residual,
)
from workprobe.oscillator.model import (
    DriveProfile,
    ancilla_block,
    eval_drive,
    h_free,
    h_micro,
    h_osc,
)
from workprobe.oscillator.propagate import propagator_distance, step_propagator
from workprobe.protocol.gates import (
    OscillatorGates,
    compose_conditional,
    controlled,
    gate_G_general,
    gate_G_simple,
    gate_K,
    gate_V,
    gates_G1_G2,
    hadamard_ancilla,
    on_ancilla,
)
from workprobe.work.stats import NonCommutingError


class TestAncillaGates:
    """Single-qubit and controlled building blocks."""

    def test_hadamard(self):
        """Test H² = 1, H|0⟩ = |+⟩ and Hσ_zH = σ_x."""
        h = hadamard_ancilla()
        assert frobenius(h @ h - identity(2)) < 1e-15
        assert np.allclose(h[:, 0], [1 / math.sqrt(2), 1 / math.sqrt(2)])
        assert frobenius(h @ SIGMA_Z @ h - SIGMA_X) < 1e-15

    def test_controlled_blocks(self, small_system):
        """Test that controlled() places blocks on |0⟩⟨0| and |1⟩⟨1|."""
        a = expm(h_free(small_system), -0.4j)
        b = expm(h_osc(small_system, 0.1), -0.4j)
        g = controlled(a, b)
        assert frobenius(ancilla_block(g, 0, 0) - a) == 0.0
        assert frobenius(ancilla_block(g, 1, 1) - b) == 0.0
        assert frobenius(ancilla_block(g, 1, 0)) == 0.0

    def test_on_ancilla(self):
        """Test 1_S ⊗ X."""
        flip = on_ancilla(SIGMA_X, 3)
        assert flip.shape == (6, 6)
        assert frobenius(flip @ flip - identity(6)) == 0.0


class TestGenericGates:
    """V̂, Ĝ and the Ĝ₁, Ĝ₂ decomposition."""

    def test_gate_V_at_zero(self, small_system):
        """Test V̂(0) = 1."""
        assert frobenius(gate_V(0.0, h_free(small_system)) - identity(32)) < 1e-14

    def test_simple_gate_with_equal_hamiltonians(self, small_system):
        """Test Ĝ(u) = 1 when Ĥ_f = Ĥ_i."""
        h = h_free(small_system)
        assert frobenius(gate_G_simple(2.5, h, h) - identity(32)) < 1e-14

    def test_simple_gate_rejects_non_commuting(self, small_system):
        """Test NonCommutingError for the displaced oscillator."""
        with pytest.raises(NonCommutingError):
            gate_G_simple(1.0, h_free(small_system), h_osc(small_system, 0.1))

    def test_simple_matches_general_when_commuting(self, rng):
        """Test ĜV̂ = Ĝ(u, τ) with Û_τ = 1 for commuting Hamiltonians."""
        h_i = np.diag(rng.normal(size=6)).astype(complex)
        h_f = np.diag(rng.normal(size=6)).astype(complex)
        u = 1.7
        simple = gate_G_simple(u, h_i, h_f) @ gate_V(u, h_i)
        general = gate_G_general(u, h_i, h_f, identity(6))
        assert frobenius(simple - general) < 1e-12

    def test_decomposition_random(self, rng):
        """Test (1⊗σ_x)Ĝ₂(1⊗σ_x)Ĝ₁ = Ĝ(u, τ) for random Hermitians and unitaries."""
        for _ in range(5):
            assert generic_decomposition_error(rng, 16) < 1e-10

    def test_decomposition_explicit(self, rng):
        """Test the composition directly for one u."""
        h_i = random_hermitian(rng, 8)
        h_f = random_hermitian(rng, 8)
        u_tau = expm(random_hermitian(rng, 8), -1j)
        g1, g2 = gates_G1_G2(0.9, h_i, h_f, u_tau)
        composed = compose_conditional(g1, g2)
        assert frobenius(composed - gate_G_general(0.9, h_i, h_f, u_tau)) < 1e-10
        assert unitarity_residual(composed) < 1e-10


class TestOscillatorGates:
    """Gates generated by Ĥ′_micro."""

    @pytest.fixture
    def gates(self, ramp_scenario):
        return OscillatorGates(replace(ramp_scenario, cutoff=24))

    def test_requires_zero_initial_lambda(self, ramp_scenario):
        """Test that a drive with λ_0 ≠ 0 is refused."""
        with pytest.raises(ValueError, match="λ_0 = 0"):
            OscillatorGates(replace(ramp_scenario, drive=DriveProfile.constant(0.1)))

    def test_gate_K_blocks(self, gates):
        """Test 𝒦(τ) blocks: free evolution, then D̂ on |1⟩."""
        k = gates.gate_K()
        free = expm(h_free(gates.sys), -1j * gates.tau)
        assert frobenius(ancilla_block(k, 0, 0) - free) < 1e-12
        assert frobenius(ancilla_block(k, 1, 1) - gates.displacement @ free) < 1e-12
        assert frobenius(ancilla_block(k, 0, 1)) == 0.0

    def test_gate_K_matches_stepped_micro_evolution(self, gates):
        """Test 𝒦(τ) against stepping Ĥ′_micro(λ_t), block by block."""
        drive, sys = gates.drive, gates.sys

        def hamiltonian_at(t):
            return h_micro(sys, float(eval_drive(drive, t)))

        stepped = step_propagator(hamiltonian_at, gates.tau, 2**11)
        k = gates.gate_K()
        for block in (0, 1):
            distance = propagator_distance(ancilla_block(stepped, block, block), ancilla_block(k, block, block))
            assert distance < 1e-4
        assert frobenius(ancilla_block(stepped, 0, 1)) < 1e-12

    def test_scriptG_is_micro_evolution(self, gates):
        """Test 𝒢(u) = e^{−iĤ′_micro(λ_τ)u}."""
        u = 3.3
        expected = expm(h_micro(gates.sys, gates.lambda_tau), -1j * u)
        assert frobenius(gates.gate_scriptG(u) - expected) < 1e-11

    @pytest.mark.parametrize("u", [0.0, 1.0, 6.5, 20.0])
    def test_composed_equals_reference(self, gates, u):
        """Test (1⊗σ_x)𝒢₂(1⊗σ_x)𝒢₁ against the directly built gate."""
        assert frobenius(gates.composed_scriptG(u) - gates.composed_reference(u)) < 1e-8

    def test_inverse_free_cancels_for_undriven(self, ramp_scenario):
        """Test 𝒢₂ = 1 when λ ≡ 0."""
        gates = OscillatorGates(replace(ramp_scenario, cutoff=16, drive=DriveProfile.constant(0.0)))
        _, g2 = gates.gates_scriptG1_G2(2.0)
        assert frobenius(g2 - identity(32)) < 1e-10

    def test_epsilon_phase_on_displacement(self, ramp_scenario):
        """Test that ε multiplies D̂ by e^{iε}."""
        s = replace(ramp_scenario, cutoff=16)
        plain = OscillatorGates(s).displacement
        shifted = OscillatorGates(s, epsilon=0.4).displacement
        assert frobenius(shifted - np.exp(0.4j) * plain) < 1e-14

    def test_module_wrapper(self, ramp_scenario):
        """Test that gate_K(scenario) equals the method."""
        s = replace(ramp_scenario, cutoff=12)
        assert frobenius(gate_K(s) - OscillatorGates(s).gate_K()) == 0.0

    def test_prepared_ancilla(self):
        """Test that the prepared ancilla |+⟩⟨+| has coherence 1/2."""
        h = hadamard_ancilla()
        plus = h @ PROJ_0 @ h
        assert plus[0, 1] == pytest.approx(0.5)
