"""
Unit tests for the verification checks on small scenarios.
"""

from dataclasses import replace

import numpy as np
import pytest

from workprobe.checks import (
    CHECKS,
    DEFAULT_CHECKS,
    CheckContext,
    CrooksCheck,
    CutoffDoublingCheck,
    DecompositionCheck,
    DephasingEnvelopeCheck,
    DissipatedWorkCheck,
    JarzynskiCheck,
    PropagatorCheck,
    RouteEquivalenceCheck,
    build_checks,
)
from workprobe.checks.routes import applicable_variants
from workprobe.oscillator.model import DriveProfile
from workprobe.protocol.runner import Variant


@pytest.fixture
def context(ramp_scenario):
    return CheckContext(ramp_scenario)


class TestRegistry:
    """Check names and construction."""

    def test_default_checks(self):
        """Test that every registered check runs by default."""
        assert set(DEFAULT_CHECKS) == set(CHECKS)
        assert "jarzynski" in CHECKS
        assert "cutoff_doubling" in CHECKS

    def test_build_checks(self):
        """Test construction in the requested order."""
        checks = build_checks(["crooks", "jarzynski"])
        assert [c.name for c in checks] == ["crooks", "jarzynski"]

    def test_unknown_check(self):
        """Test that unknown names are refused."""
        with pytest.raises(ValueError, match="Unknown check"):
            build_checks(["jarzynski", "entropy"])


class TestContext:
    """Cached scenario data."""

    def test_spectral_shift(self, context):
        """Test ΔF_oracle = −λ_τ²/ω for a ramp from zero."""
        lam = context.scenario.lambda_final
        assert context.spectral_shift_delta_f == pytest.approx(-(lam**2))

    def test_fallback_grid(self, ramp_scenario):
        """Test that a scenario without a grid gets the default one."""
        ctx = CheckContext(replace(ramp_scenario, u_grid=()))
        assert ctx.u_grid[0] == 0.0
        assert ctx.u_grid[-1] == 20.0

    def test_with_cutoff(self, context):
        """Test that the doubled context keeps options."""
        doubled = context.with_cutoff(80)
        assert doubled.scenario.cutoff == 80
        assert doubled.variant is context.variant

    def test_applicable_variants(self, context, ramp_scenario):
        """Test variant selection from λ_0 and commutation."""
        assert applicable_variants(context) == [Variant.GENERAL, Variant.APPENDIX]
        trivial = CheckContext(replace(ramp_scenario, cutoff=16, drive=DriveProfile.constant(0.0)))
        assert Variant.SIMPLE in applicable_variants(trivial)
        ramp_from_nonzero = DriveProfile.tabulated([(0.0, 0.05), (10.0, 0.1)])
        shifted = CheckContext(replace(ramp_scenario, cutoff=16, drive=ramp_from_nonzero))
        assert applicable_variants(shifted) == [Variant.GENERAL]


class TestChecksPass:
    """Each check passes on a converged scenario."""

    def test_jarzynski(self, context):
        """Test χ(iβ) = e^{−βΔF} and ΔF = −λ_τ²/ω."""
        result = JarzynskiCheck().evaluate(context)
        assert result.passed, str(result)
        assert result.details["delta_f"] == pytest.approx(-(context.scenario.lambda_final**2), abs=1e-9)

    def test_crooks(self, context):
        """Test u-independence of the Crooks ΔF."""
        result = CrooksCheck().evaluate(context)
        assert result.passed, str(result)
        assert result.details["points"] == len(context.u_grid)
        assert result.details["max_phase"] < 1e-8

    def test_dissipated_work(self, context):
        """Test ⟨W⟩ ≥ ΔF."""
        result = DissipatedWorkCheck().evaluate(context)
        assert result.passed
        assert result.details["dissipated_work"] >= 0.0

    def test_route_equivalence(self, context):
        """Test trace formula, TPM sum and readouts agree."""
        result = RouteEquivalenceCheck().evaluate(context)
        assert result.passed, str(result)
        assert "readout_error_appendix" in result.details
        assert "readout_error_general" in result.details

    def test_decomposition(self, context):
        """Test the gate decompositions."""
        result = DecompositionCheck().evaluate(context)
        assert result.passed, str(result)
        assert result.details["oscillator_samples"] == 5

    def test_decomposition_skips_oscillator_part(self, ramp_scenario):
        """Test that λ_0 ≠ 0 skips the oscillator identity."""
        ctx = CheckContext(replace(ramp_scenario, cutoff=16, drive=DriveProfile.constant(0.1)))
        result = DecompositionCheck().evaluate(ctx)
        assert result.passed
        assert str(result.details["oscillator_error"]).startswith("skipped")

    def test_propagator(self, ramp_scenario):
        """Test the stepped propagator with a coarse step count."""
        ctx = CheckContext(replace(ramp_scenario, cutoff=24), propagator_steps=2**12)
        result = PropagatorCheck(tolerance=1e-4).evaluate(ctx)
        assert result.passed, str(result)
        assert result.details["inverse_time_error"] < 1e-10

    def test_propagator_fails_with_too_few_steps(self, ramp_scenario):
        """Test that a handful of steps is caught."""
        ctx = CheckContext(replace(ramp_scenario, cutoff=16), propagator_steps=4)
        assert not PropagatorCheck().evaluate(ctx).passed

    def test_dephasing_envelope(self, context):
        """Test χ_damped = e^{−Γu}χ with a positive ancilla state."""
        result = DephasingEnvelopeCheck().evaluate(context)
        assert result.passed, str(result)
        assert result.details["gamma"] == 0.5

    def test_cutoff_doubling(self, context):
        """Test that N = 40 is converged for n̄ = 1."""
        result = CutoffDoublingCheck().evaluate(context)
        assert result.passed, str(result)
        assert result.details["doubled_cutoff"] == 80


class TestChecksFail:
    """Checks detect broken scenarios."""

    def test_cutoff_doubling_fails_for_tiny_cutoff(self, ramp_scenario):
        """Test that N = 4 is not converged for n̄ = 1."""
        ctx = CheckContext(replace(ramp_scenario, cutoff=4))
        result = CutoffDoublingCheck().evaluate(ctx)
        assert not result.passed
        assert result.residual > 1e-4

    def test_jarzynski_detects_truncation(self, ramp_scenario):
        """Test that the spectral-shift oracle flags a truncated ΔF."""
        ctx = CheckContext(replace(ramp_scenario, cutoff=4))
        assert not JarzynskiCheck().evaluate(ctx).passed

    def test_crooks_without_points(self, context):
        """Test that a grid where the ratio is never defined fails."""
        context.crooks_points.clear()
        result = CrooksCheck().evaluate(context)
        assert not result.passed
        assert np.isinf(result.residual)

    def test_crooks_detects_phase(self, context):
        """Test that a ratio off the positive real axis fails even with a flat ΔF."""
        u, delta_f, _ = context.crooks_points[3]
        context.crooks_points[3] = (u, delta_f, 0.5)
        result = CrooksCheck().evaluate(context)
        assert not result.passed
        assert result.details["max_phase"] == pytest.approx(0.5)
        assert result.residual >= 0.5
