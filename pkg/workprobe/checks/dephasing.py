"""
Dephasing-envelope check: the damped readout is the undamped one times
e^{−Γ·duration(u)}, and ρ_A stays positive.
"""

import numpy as np

from workprobe.checks.context import CheckContext
from workprobe.checks.routes import applicable_variants
from workprobe.core.check import Check, Measurement
from workprobe.protocol.dephasing import DephasingModel
from workprobe.protocol.runner import Variant

POSITIVITY_TOL = 1e-12


class DephasingEnvelopeCheck(Check):
    name = "dephasing_envelope"
    default_tolerance = 1e-10
    description = "damped readout = e^{−Γ·duration(u)} × undamped readout"

    def measure(self, context: CheckContext) -> Measurement:
        model = context.dephasing or DephasingModel(gamma=context.scenario.gamma)
        variant = context.variant
        if variant not in applicable_variants(context):
            variant = Variant.GENERAL

        grid = context.u_grid
        undamped = context.protocol(variant).sweep(grid, workers=context.workers)
        damped = context.protocol(variant, model).sweep(grid, workers=context.workers)

        factors = np.array([model.coherence_factor(float(u)) for u in grid])
        envelope = np.abs(
            np.array([r.chi_readout for r in damped])
            - factors * np.array([r.chi_readout for r in undamped])
        )
        min_eig = min(r.min_eigenvalue for r in damped + undamped)

        residual = float(envelope.max())
        return Measurement(
            residual=residual,
            details={
                "variant": variant.value,
                "gamma": model.gamma,
                "duration_rule": model.duration_rule.value,
                "min_eigenvalue": min_eig,
            },
            passed=residual <= self.tolerance and min_eig >= -POSITIVITY_TOL,
        )
