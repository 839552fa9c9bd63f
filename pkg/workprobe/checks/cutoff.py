"""
Cutoff-robustness check.

Recomputes the scalar outputs at twice the Fock cutoff: χ on the grid, the
Jarzynski ΔF and the mean Crooks ΔF. A converged truncation leaves them
unchanged.
"""

import math

import numpy as np

from workprobe.checks.context import CheckContext
from workprobe.core.check import Check, Measurement


def _mean(values) -> float:
    return float(np.mean(values)) if len(values) else math.nan


class CutoffDoublingCheck(Check):
    name = "cutoff_doubling"
    default_tolerance = 1e-8
    description = "scalars unchanged when the Fock cutoff is doubled"

    def measure(self, context: CheckContext) -> Measurement:
        doubled = context.with_cutoff(2 * context.scenario.cutoff)

        chi_change = float(np.max(np.abs(context.chi_grid - doubled.chi_grid)))
        jarzynski_change = abs(context.jarzynski_delta_f - doubled.jarzynski_delta_f)
        crooks_change = abs(_mean(context.crooks_delta_f) - _mean(doubled.crooks_delta_f))

        changes = (chi_change, jarzynski_change, crooks_change)
        residual = max(changes) if all(math.isfinite(c) for c in changes) else math.inf

        return Measurement(
            residual=residual,
            details={
                "cutoff": context.scenario.cutoff,
                "doubled_cutoff": doubled.scenario.cutoff,
                "chi_change": chi_change,
                "jarzynski_change": jarzynski_change,
                "crooks_change": crooks_change,
            },
        )
