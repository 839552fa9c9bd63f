"""
Shared data for a verification run.

Processes, spectra and χ on the u-grid are built lazily and cached, so checks
that need the same quantity compute it once.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt

from workprobe.logging import get_probe_logger
from workprobe.oscillator.model import FreeEnergy, Scenario, eval_drive, partition_and_free_energy
from workprobe.protocol.dephasing import DephasingModel
from workprobe.protocol.runner import Protocol, Variant
from workprobe.work.process import DEFAULT_STEPS, WorkProcess, backward_process, forward_process
from workprobe.work.stats import (
    UndefinedRatioError,
    WorkDistribution,
    chi_of_process,
    crooks_delta_f as delta_f_from_chi,
    crooks_phase,
    jarzynski_free_energy,
    tpm_distribution,
)

logger = get_probe_logger(__name__)

# u-grid used when the scenario carries none
FALLBACK_U_GRID = tuple(np.linspace(0.0, 20.0, 81).tolist())


@dataclass
class CheckContext:
    """
    Scenario plus run options, with cached derived quantities.

    Example:
        context = CheckContext(preset_fig2c(), variant=Variant.APPENDIX)
        context.free_energy.delta_f
    """

    scenario: Scenario
    variant: Variant = Variant.APPENDIX
    propagator_steps: int = DEFAULT_STEPS
    workers: int = 1
    seed: int = 0
    dephasing: Optional[DephasingModel] = field(default=None)

    @cached_property
    def u_grid(self) -> npt.NDArray[np.float64]:
        grid = self.scenario.u_grid or FALLBACK_U_GRID
        return np.asarray(grid, dtype=float)

    @cached_property
    def forward(self) -> WorkProcess:
        return forward_process(self.scenario)

    @cached_property
    def backward(self) -> WorkProcess:
        return backward_process(self.forward)

    @cached_property
    def free_energy(self) -> FreeEnergy:
        return partition_and_free_energy(
            self.forward.initial_spectrum, self.forward.final_spectrum, self.scenario.beta
        )

    @property
    def lambda_initial(self) -> float:
        return float(eval_drive(self.scenario.effective_drive(), 0.0))

    @property
    def spectral_shift_delta_f(self) -> float:
        """−(λ_τ² − λ_0²)/ω: the exact untruncated free-energy change."""
        lam_0 = self.lambda_initial
        lam_tau = self.scenario.lambda_final
        return -(lam_tau**2 - lam_0**2) / self.scenario.omega

    @cached_property
    def distribution(self) -> WorkDistribution:
        fwd = self.forward
        return tpm_distribution(fwd.initial_spectrum, fwd.final_spectrum, fwd.unitary, fwd.rho0)

    @cached_property
    def chi_grid(self) -> npt.NDArray[np.complex128]:
        """χ(u) on the u-grid by the trace formula."""
        return np.array([chi_of_process(u, self.forward).value for u in self.u_grid])

    @cached_property
    def jarzynski_delta_f(self) -> float:
        return jarzynski_free_energy(self.forward)

    @cached_property
    def crooks_points(self) -> List[Tuple[float, float, float]]:
        """(u, ΔF, arg ratio) at every grid point where the Crooks ratio is defined."""
        beta = self.forward.beta
        points = []
        for u in self.u_grid:
            chi_f = chi_of_process(float(u), self.forward).value
            chi_b = chi_of_process(-float(u) + 1j * beta, self.backward).value
            try:
                delta_f = delta_f_from_chi(chi_f, chi_b, beta, phase_tol=math.inf)
            except UndefinedRatioError as e:
                logger.debug(f"Skipping u={u}: {e}")
                continue
            points.append((float(u), delta_f, crooks_phase(chi_f, chi_b)))
        return points

    @property
    def crooks_delta_f(self) -> List[float]:
        return [delta_f for _, delta_f, _ in self.crooks_points]

    def protocol(
        self, variant: Optional[Variant] = None, dephasing: Optional[DephasingModel] = None
    ) -> Protocol:
        """Protocol over this scenario sharing the forward process."""
        return Protocol(self.scenario, variant or self.variant, dephasing, process=self.forward)

    def with_cutoff(self, cutoff: int) -> "CheckContext":
        return CheckContext(
            scenario=self.scenario.with_cutoff(cutoff),
            variant=self.variant,
            propagator_steps=self.propagator_steps,
            workers=self.workers,
            seed=self.seed,
            dephasing=self.dephasing,
        )
