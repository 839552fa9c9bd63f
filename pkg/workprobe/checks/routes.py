"""
Route-equivalence check.

Three routes to χ(u) on the scenario's u-grid:
- trace formula (chi_direct)
- Fourier sum over the two-point-measurement distribution
- interferometer readout, for every protocol variant that applies
"""

from typing import List

import numpy as np

from workprobe.checks.context import CheckContext
from workprobe.core.check import Check, Measurement
from workprobe.core.linalg import commutes
from workprobe.logging import get_probe_logger
from workprobe.protocol.runner import Variant
from workprobe.work.stats import chi_from_distribution

logger = get_probe_logger(__name__)


def applicable_variants(context: CheckContext) -> List[Variant]:
    """Variants whose preconditions hold for the scenario."""
    variants = [Variant.GENERAL]
    if context.lambda_initial == 0.0:
        variants.append(Variant.APPENDIX)
    fwd = context.forward
    if commutes(fwd.h_initial, fwd.h_final, 1e-10):
        variants.append(Variant.SIMPLE)
    return variants


class RouteEquivalenceCheck(Check):
    """
    Maximum disagreement between the χ routes.

    The distribution route is held to tpm_tolerance, the readouts to tolerance.
    """

    name = "route_equivalence"
    default_tolerance = 1e-8
    description = "trace formula vs TPM sum vs interferometer readout"

    def __init__(self, tolerance=None, tpm_tolerance: float = 1e-9):
        super().__init__(tolerance)
        self.tpm_tolerance = tpm_tolerance

    def measure(self, context: CheckContext) -> Measurement:
        grid = context.u_grid
        reference = context.chi_grid
        dist = context.distribution

        from_tpm = np.array([chi_from_distribution(u, dist).value for u in grid])
        tpm_error = float(np.max(np.abs(from_tpm - reference)))

        details = {"tpm_error": tpm_error, "points": len(grid)}
        readout_error = 0.0
        for variant in applicable_variants(context):
            results = context.protocol(variant).sweep(grid, workers=context.workers)
            readout = np.array([r.chi_readout for r in results])
            err = float(np.max(np.abs(readout - reference)))
            details[f"readout_error_{variant.value}"] = err
            readout_error = max(readout_error, err)
            logger.debug(f"{variant.value} readout vs trace formula: {err:.3e}")

        return Measurement(
            residual=max(tpm_error, readout_error),
            details=details,
            passed=tpm_error <= self.tpm_tolerance and readout_error <= self.tolerance,
        )
