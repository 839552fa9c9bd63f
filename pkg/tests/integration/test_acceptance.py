"""
End-to-end acceptance runs on the named scenarios.

The fig2c runs use the full N = 64 cutoff; those over the whole 401-point
grid are marked slow.
"""

import itertools
import math
from dataclasses import replace

import numpy as np
import pytest

from workprobe.checks import (
    CheckContext,
    CrooksCheck,
    CutoffDoublingCheck,
    JarzynskiCheck,
    PropagatorCheck,
    RouteEquivalenceCheck,
)
from workprobe.checks.routes import applicable_variants
from workprobe.config import preset_fig2c
from workprobe.core.verifier import Verifier
from workprobe.oscillator.model import DriveProfile, Platform, Scenario
from workprobe.protocol.dephasing import DephasingModel
from workprobe.protocol.runner import Protocol, Variant
from workprobe.work.process import backward_process, forward_process
from workprobe.work.stats import chi_of_process, crooks_free_energy, jarzynski_free_energy

BETAS = (math.log(2.0), 1.0, 2.0)
LAMBDAS = (0.0, 0.05, 0.1)
TAUS = (0.0, 1.0, 10.0)


def _corpus(cutoff: int = 24):
    for beta, lam, tau in itertools.product(BETAS, LAMBDAS, TAUS):
        yield Scenario(beta=beta, tau=tau, cutoff=cutoff, drive=DriveProfile.tanh_ramp(lam, 1.0))


@pytest.mark.integration
class TestNormalisation:
    """χ(0) = 1 over a corpus of scenarios."""

    @pytest.mark.parametrize("variant", [Variant.APPENDIX, Variant.GENERAL])
    def test_unit_readout(self, variant):
        """Test 27 scenarios for each variant."""
        for scenario in _corpus():
            assert Protocol(scenario, variant).run(0.0).chi_readout == pytest.approx(1.0, abs=1e-10)

    def test_unit_readout_simple_variant(self):
        """Test the simple variant on every corpus scenario whose Hamiltonians commute."""
        covered = 0
        for scenario in _corpus():
            if Variant.SIMPLE not in applicable_variants(CheckContext(scenario)):
                continue
            covered += 1
            result = Protocol(scenario, Variant.SIMPLE).run(0.0)
            assert result.chi_readout == pytest.approx(1.0, abs=1e-10)
        # λ = 0 everywhere, plus τ = 0 where the ramp has not started
        assert covered == 15


@pytest.mark.integration
class TestFluctuationRelations:
    """Jarzynski and Crooks against the exact ΔF = −λ_τ²/ω."""

    def test_jarzynski_well_converged(self):
        """Test ΔF = −λ_τ²/ω at N = 128 on all 27 corpus scenarios."""
        for scenario in _corpus(cutoff=128):
            expected = -(scenario.lambda_final**2) / scenario.omega
            delta_f = jarzynski_free_energy(forward_process(scenario))
            assert delta_f == pytest.approx(expected, abs=1e-8), scenario

    def test_crooks_is_u_independent(self, fig2c_short):
        """Test the Crooks ΔF over the fig2c grid."""
        forward = forward_process(fig2c_short)
        backward = backward_process(forward)
        values = [crooks_free_energy(u, forward, backward) for u in fig2c_short.u_grid]
        assert max(values) - min(values) < 1e-7
        assert np.mean(values) == pytest.approx(-(fig2c_short.lambda_final**2), abs=1e-6)

    def test_fig2c_verifier(self, fig2c_short):
        """Test the fluctuation and route checks together on fig2c."""
        verifier = Verifier()
        for check in (JarzynskiCheck(), CrooksCheck(), RouteEquivalenceCheck()):
            verifier.add(check)
        result = verifier.verify(CheckContext(fig2c_short))
        assert result.passed, result.to_json()


@pytest.mark.integration
class TestFig2c:
    """The fig2c scenario."""

    def test_readout_matches_trace_formula(self, fig2c_short):
        """Test the appendix readout on a 41-point grid."""
        process = forward_process(fig2c_short)
        for result in Protocol(fig2c_short).sweep(fig2c_short.u_grid, workers=2):
            assert abs(result.chi_readout - chi_of_process(result.u, process).value) < 1e-8

    def test_damped_envelope(self, fig2c_short):
        """Test χ_damped = e^{−Γu}χ with Γ = 0.5."""
        clean = Protocol(fig2c_short).sweep(fig2c_short.u_grid)
        noisy = Protocol(fig2c_short, dephasing=DephasingModel(fig2c_short.gamma)).sweep(
            fig2c_short.u_grid
        )
        for a, b in zip(clean, noisy):
            assert abs(b.chi_readout - math.exp(-0.5 * a.u) * a.chi_readout) < 1e-10
            assert b.min_eigenvalue >= -1e-12

    def test_nano_platform_matches_micro_at_double_drive(self, fig2c_short):
        """Test that the nano platform at λ equals the micro one at 2λ."""
        nano = replace(
            fig2c_short, cutoff=32, drive=DriveProfile.tanh_ramp(0.05, 1.0), platform=Platform.NANO
        )
        micro = replace(fig2c_short, cutoff=32)
        for u in (0.5, 5.0, 12.0):
            a = Protocol(nano).run(u).chi_readout
            b = Protocol(micro).run(u).chi_readout
            assert abs(a - b) < 1e-12

    @pytest.mark.slow
    def test_full_grid(self):
        """Test the readout over all 401 points."""
        scenario = preset_fig2c()
        process = forward_process(scenario)
        results = Protocol(scenario).sweep(scenario.u_grid, workers=4)
        assert len(results) == 401
        worst = max(abs(r.chi_readout - chi_of_process(r.u, process).value) for r in results)
        assert worst < 1e-8

    @pytest.mark.slow
    def test_cutoff_converged(self):
        """Test that doubling N = 64 changes nothing."""
        context = CheckContext(preset_fig2c())
        result = CutoffDoublingCheck().evaluate(context)
        assert result.passed, str(result)

    @pytest.mark.slow
    def test_stepped_propagator(self):
        """Test 2^14 midpoint steps against the closed form."""
        result = PropagatorCheck().evaluate(CheckContext(preset_fig2c()))
        assert result.passed, str(result)
