"""
Fluctuation-relation checks.

Handles:
- jarzynski: χ(iβ) = e^{−βΔF}, plus the spectral-shift value of ΔF
- crooks: (1/β) ln[χ′(−u + iβ)/χ(u)] is u-independent and equals ΔF
- dissipated_work: ⟨W⟩ − ΔF ≥ 0
"""

import math

import numpy as np

from workprobe.checks.context import CheckContext
from workprobe.core.check import Check, Measurement
from workprobe.work.stats import (
    CROOKS_PHASE_TOL,
    chi_of_process,
    dissipated_work,
    mean_work_operator,
    work_moments,
)


class JarzynskiCheck(Check):
    """Relative error of χ(iβ) against e^{−βΔF} from the partition functions."""

    name = "jarzynski"
    default_tolerance = 1e-6
    description = "χ(iβ) against e^{−βΔF}, ΔF against −(λ_τ² − λ_0²)/ω"

    def measure(self, context: CheckContext) -> Measurement:
        beta = context.scenario.beta
        delta_f = context.free_energy.delta_f
        chi = chi_of_process(1j * beta, context.forward).value
        target = math.exp(-beta * delta_f)
        relative = abs(chi - target) / target

        oracle = context.spectral_shift_delta_f
        shift_error = abs(delta_f - oracle)

        return Measurement(
            residual=max(relative, shift_error),
            details={
                "delta_f": delta_f,
                "delta_f_jarzynski": context.jarzynski_delta_f,
                "chi_i_beta": chi,
                "relative_error": relative,
                "spectral_shift_delta_f": oracle,
                "spectral_shift_error": shift_error,
            },
        )


class CrooksCheck(Check):
    """
    ΔF recovered from forward/backward characteristic functions.

    Passes when the spread over the grid is within spread_tolerance, the
    ratio stays real-positive within phase_tolerance and the mean is within
    tolerance of the partition-function ΔF.
    """

    name = "crooks"
    default_tolerance = 1e-6
    description = "u-independence of (1/β) ln[χ′(−u + iβ)/χ(u)]"

    def __init__(
        self,
        tolerance=None,
        spread_tolerance: float = 1e-7,
        phase_tolerance: float = CROOKS_PHASE_TOL,
    ):
        super().__init__(tolerance)
        self.spread_tolerance = spread_tolerance
        self.phase_tolerance = phase_tolerance

    def measure(self, context: CheckContext) -> Measurement:
        values = np.asarray(context.crooks_delta_f)
        skipped = len(context.u_grid) - len(values)
        if len(values) == 0:
            return Measurement(
                residual=math.inf,
                details={"reason": "Crooks ratio undefined at every grid point", "skipped": skipped},
            )

        spread = float(values.max() - values.min())
        mean = float(values.mean())
        deviation = abs(mean - context.free_energy.delta_f)
        max_phase = max(abs(phase) for _, _, phase in context.crooks_points)

        return Measurement(
            residual=max(spread, deviation, max_phase),
            details={
                "delta_f_crooks": mean,
                "delta_f": context.free_energy.delta_f,
                "spread": spread,
                "spread_tolerance": self.spread_tolerance,
                "deviation": deviation,
                "max_phase": max_phase,
                "phase_tolerance": self.phase_tolerance,
                "points": len(values),
                "skipped": skipped,
            },
            passed=(
                spread <= self.spread_tolerance
                and max_phase <= self.phase_tolerance
                and deviation <= self.tolerance
            ),
        )


class DissipatedWorkCheck(Check):
    """Second-law sanity: ⟨W⟩ ≥ ΔF for a thermal initial state."""

    name = "dissipated_work"
    default_tolerance = 1e-10
    description = "⟨W⟩ − ΔF is non-negative"

    def measure(self, context: CheckContext) -> Measurement:
        dist = context.distribution
        delta_f = context.free_energy.delta_f
        w_diss = dissipated_work(dist, delta_f)
        return Measurement(
            residual=max(0.0, -w_diss),
            details={
                "mean_work": work_moments(dist, 1),
                "mean_work_operator": mean_work_operator(context.forward),
                "delta_f": delta_f,
                "dissipated_work": w_diss,
                "bins": len(dist),
            },
        )
