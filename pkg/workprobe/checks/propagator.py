"""
Propagator check: stepped time-ordered product against the closed form.
"""

from workprobe.checks.context import CheckContext
from workprobe.core.check import Check, Measurement
from workprobe.core.linalg import expm, frobenius
from workprobe.oscillator.model import h_free
from workprobe.oscillator.propagate import (
    closed_form,
    inverse_free_evolution,
    propagator_distance,
    time_ordered,
)


class PropagatorCheck(Check):
    """
    Phase-insensitive distance between the two Û_τ routes on the low Fock
    block, plus the inverse-time identity e^{iĤ_free τ} = e^{−iĤ_free(2π/ω − τ)}.
    """

    name = "propagator"
    default_tolerance = 1e-6
    description = "stepped vs closed-form Û_τ, inverse-time identity"

    def __init__(self, tolerance=None, inverse_tolerance: float = 1e-10):
        super().__init__(tolerance)
        self.inverse_tolerance = inverse_tolerance

    def measure(self, context: CheckContext) -> Measurement:
        sc = context.scenario
        sys = sc.system()
        drive = sc.effective_drive()

        stepped = time_ordered(drive, sc.omega, sc.phi, sc.tau, context.propagator_steps, sys)
        closed = closed_form(drive, sc.omega, sc.phi, sc.tau, sys)
        distance = propagator_distance(stepped.unitary, closed.unitary)

        inverse = frobenius(inverse_free_evolution(sc.omega, sc.tau, sys) - expm(h_free(sys), 1j * sc.tau))

        return Measurement(
            residual=max(distance, inverse),
            details={
                "steps": context.propagator_steps,
                "distance": distance,
                "inverse_time_error": inverse,
                "alpha": closed.alpha,
                "unitarity_stepped": stepped.unitarity_residual,
                "unitarity_closed_form": closed.unitarity_residual,
            },
            passed=distance <= self.tolerance and inverse <= self.inverse_tolerance,
        )
