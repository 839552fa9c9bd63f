"""
Forward and backward work processes.

A WorkProcess bundles (Ĥ_i, Ĥ_f, Û_τ, ρ₀, β): everything the two-point
measurement scheme and the characteristic function need.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

from workprobe.core.linalg import ComplexMatrix, EigenSystem, dagger, hermitian_eig
from workprobe.logging import get_probe_logger
from workprobe.oscillator.model import Scenario, eval_drive, final_lambda, h_osc, thermal_state
from workprobe.oscillator.propagate import PropagatorMethod, closed_form, time_ordered

logger = get_probe_logger(__name__)

DEFAULT_STEPS = 2**14


@dataclass
class WorkProcess:
    """
    A process λ_0 → λ_τ acting on a thermal state.

    rho0 is the Gibbs state of h_initial at beta when beta is set.
    """

    h_initial: ComplexMatrix
    h_final: ComplexMatrix
    unitary: ComplexMatrix
    rho0: ComplexMatrix
    beta: Optional[float] = None

    @cached_property
    def initial_spectrum(self) -> EigenSystem:
        return hermitian_eig(self.h_initial)

    @cached_property
    def final_spectrum(self) -> EigenSystem:
        return hermitian_eig(self.h_final)

    @property
    def dim(self) -> int:
        return int(self.h_initial.shape[0])


def forward_process(
    scenario: Scenario,
    method: PropagatorMethod = PropagatorMethod.CLOSED_FORM,
    steps: int = DEFAULT_STEPS,
) -> WorkProcess:
    """
    Oscillator process Ĥ_osc(λ_0) → Ĥ_osc(λ_τ) from a scenario.

    Args:
        scenario: Experiment description (the effective drive is used)
        method: Propagator route for Û_τ
        steps: Step count for the stepped route

    Returns:
        WorkProcess with ρ₀ thermal in Ĥ_i at the scenario's β
    """
    sys = scenario.system()
    drive = scenario.effective_drive()
    lam_0 = float(eval_drive(drive, 0.0))
    lam_tau = final_lambda(drive, scenario.tau)

    h_i = h_osc(sys, lam_0, scenario.phi)
    h_f = h_osc(sys, lam_tau, scenario.phi)

    if method is PropagatorMethod.STEPPED:
        prop = time_ordered(drive, scenario.omega, scenario.phi, scenario.tau, steps, sys)
    else:
        prop = closed_form(drive, scenario.omega, scenario.phi, scenario.tau, sys)

    logger.debug(
        f"Forward process: λ_0={lam_0}, λ_τ={lam_tau}, α_τ={prop.alpha:.6g}, "
        f"method={prop.method.value}"
    )
    return WorkProcess(
        h_initial=h_i,
        h_final=h_f,
        unitary=prop.unitary,
        rho0=thermal_state(h_i, scenario.beta),
        beta=scenario.beta,
    )


def backward_process(source: Union[Scenario, WorkProcess]) -> WorkProcess:
    """
    Time-reversed process: λ_τ → λ_0, Û_τ†, starting from the Gibbs state of Ĥ(λ_τ).

    Applying it twice returns the forward objects.
    """
    forward = forward_process(source) if isinstance(source, Scenario) else source
    if forward.beta is None:
        raise ValueError("Backward process needs the inverse temperature of the forward process")

    return WorkProcess(
        h_initial=forward.h_final,
        h_final=forward.h_initial,
        unitary=dagger(forward.unitary),
        rho0=thermal_state(forward.final_spectrum, forward.beta),
        beta=forward.beta,
    )
