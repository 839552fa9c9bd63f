"""
Propagators for the driven oscillator.

Two routes to Û_τ = 𝒯 exp(−i∫₀^τ Ĥ_osc(t) dt):
- stepped: product of midpoint-evaluated step unitaries (time_ordered)
- closed form: D̂(α_τ) e^{−iĤ_free τ} with α_τ = −i e^{−iωτ} ∫₀^τ λ_t e^{iωt} dt

The displacement phase ε(τ) is fixed to 0; propagators from the two routes are
compared with distance_up_to_phase on the low Fock block.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
import scipy.integrate

from workprobe.core.linalg import (
    ComplexMatrix,
    distance_up_to_phase,
    expm,
    hermitian_eig,
    identity,
    unitarity_residual,
)
from workprobe.logging import get_probe_logger
from workprobe.oscillator.model import (
    DriveKind,
    DriveProfile,
    OscillatorSystem,
    eval_drive,
    h_free,
    h_osc,
)

logger = get_probe_logger(__name__)

DEFAULT_QUAD_STEPS = 4096
SUPPORT_WARN_AMPLITUDE = 1e-6


class PropagatorMethod(Enum):
    STEPPED = "stepped"
    CLOSED_FORM = "closed_form"


@dataclass
class PropagatorResult:
    """Û_τ together with the displacement amplitude of the process."""

    unitary: ComplexMatrix
    alpha: complex
    method: PropagatorMethod

    @property
    def unitarity_residual(self) -> float:
        return unitarity_residual(self.unitary)


def _quadrature_drive(drive: DriveProfile) -> DriveProfile:
    # A sudden switch is λ_final on (0, τ]; the value at the t = 0 endpoint has measure zero.
    if drive.kind is DriveKind.SUDDEN:
        return DriveProfile.constant(drive.lambda_final)
    return drive


def displacement(alpha: complex, sys: OscillatorSystem, warn: bool = True) -> ComplexMatrix:
    """
    D̂(α) = exp(α b† − α* b) on the truncated space.

    Evaluated as e^{−iM} with the Hermitian generator M = i(α b† − α* b).

    Args:
        alpha: Complex amplitude
        sys: Oscillator providing b, b†
        warn: Log a warning when ⟨N−1|D(α)|0⟩ exceeds 1e-6 (support hits the cutoff)
    """
    generator = 1j * (alpha * sys.bdag - np.conj(alpha) * sys.b)
    d = expm(generator, -1j)
    if warn:
        edge = abs(d[sys.cutoff - 1, 0])
        if edge > SUPPORT_WARN_AMPLITUDE:
            logger.warning(
                f"Displacement |α|={abs(alpha):.3g} reaches the Fock cutoff N={sys.cutoff}: "
                f"|⟨N−1|D(α)|0⟩| = {edge:.2e}; increase the cutoff"
            )
    return d


def alpha_of_tau(
    drive: DriveProfile,
    omega: float,
    tau: float,
    quad_steps: int = DEFAULT_QUAD_STEPS,
    t_start: float = 0.0,
) -> complex:
    """
    Displacement amplitude −i e^{−iωτ} ∫_{t_start}^{τ} λ_t e^{iωt} dt.

    Composite Simpson rule on quad_steps intervals (rounded up to even).
    With t_start > 0 this is the amplitude accumulated over [t_start, τ], which
    composes as α(τ₁+τ₂) = e^{−iωτ₂} α(τ₁) + α[τ₁, τ₁+τ₂].
    """
    if quad_steps < 2:
        raise ValueError(f"quad_steps must be at least 2, got {quad_steps}")
    if tau < t_start:
        raise ValueError(f"Integration window is reversed: [{t_start}, {tau}]")
    if tau == t_start:
        return 0j

    steps = quad_steps + (quad_steps % 2)
    t = np.linspace(t_start, tau, steps + 1)
    integrand = eval_drive(_quadrature_drive(drive), t) * np.exp(1j * omega * t)
    integral = scipy.integrate.simpson(integrand.real, x=t) + 1j * scipy.integrate.simpson(
        integrand.imag, x=t
    )
    return complex(-1j * np.exp(-1j * omega * tau) * integral)


def step_propagator(
    hamiltonian_at: Callable[[float], ComplexMatrix],
    tau: float,
    steps: int,
    dim: Optional[int] = None,
) -> ComplexMatrix:
    """
    Midpoint product ∏_k exp(−i H(t_k + dt/2) dt), latest time leftmost.

    Args:
        hamiltonian_at: Callable returning the Hermitian H(t)
        tau: Total duration
        steps: Number of piecewise-constant steps (≥ 1)
        dim: Hilbert-space dimension, only needed when tau == 0
    """
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    if tau == 0:
        return identity(dim if dim is not None else hamiltonian_at(0.0).shape[0])

    dt = tau / steps
    u = None
    for k in range(steps):
        step = hermitian_eig(hamiltonian_at((k + 0.5) * dt), check=False).exp(-1j * dt)
        u = step if u is None else step @ u
    return u


def time_ordered(
    drive: DriveProfile,
    omega: float,
    phi: float,
    tau: float,
    steps: int,
    sys: OscillatorSystem,
) -> PropagatorResult:
    """
    Numerical 𝒯 exp(−i∫₀^τ Ĥ_osc(t) dt) by the midpoint product rule.

    Second order in dt; the reported alpha is the quadrature value e^{iφ}α_τ.
    """
    logger.debug(f"Stepping Ĥ_osc over τ={tau} with {steps} steps at N={sys.cutoff}")

    def hamiltonian_at(t: float) -> ComplexMatrix:
        return h_osc(sys, float(eval_drive(drive, t)), phi)

    u = step_propagator(hamiltonian_at, tau, steps, dim=sys.cutoff)
    alpha = np.exp(1j * phi) * alpha_of_tau(drive, omega, tau)
    return PropagatorResult(unitary=u, alpha=complex(alpha), method=PropagatorMethod.STEPPED)


def closed_form(
    drive: DriveProfile,
    omega: float,
    phi: float,
    tau: float,
    sys: OscillatorSystem,
    quad_steps: int = DEFAULT_QUAD_STEPS,
) -> PropagatorResult:
    """
    Û_τ = D̂(e^{iφ}α_τ) e^{−iĤ_free τ}.

    The drive quadrature b†e^{iφ} + b e^{−iφ} is the φ = 0 one rotated by the
    frame phase, which rotates α_τ by e^{iφ}.
    """
    alpha = complex(np.exp(1j * phi) * alpha_of_tau(drive, omega, tau, quad_steps))
    u = displacement(alpha, sys) @ expm(h_free(sys), -1j * tau)
    return PropagatorResult(unitary=u, alpha=alpha, method=PropagatorMethod.CLOSED_FORM)


def inverse_free_evolution(omega: float, tau: float, sys: OscillatorSystem) -> ComplexMatrix:
    """
    e^{iĤ_free τ} realised as forward evolution e^{−iĤ_free(2π/ω − τ)}.

    Exact because the spectrum of Ĥ_free is an integer multiple of ω. Times
    outside [0, 2π/ω] are reduced modulo the period first.
    """
    period = 2.0 * math.pi / omega
    reduced = tau
    if not 0.0 <= tau <= period:
        reduced = math.fmod(tau, period)
        if reduced < 0:
            reduced += period
        logger.debug(f"Inverse-time evolution: τ={tau} reduced to {reduced} mod 2π/ω")
    return expm(h_free(sys), -1j * (period - reduced))


def propagator_distance(a: ComplexMatrix, b: ComplexMatrix, keep: Optional[int] = None) -> float:
    """
    Phase-insensitive distance restricted to the first `keep` Fock columns.

    Truncated ladder operators break the canonical commutator at the top level,
    so stepped and closed-form propagators only agree away from the cutoff.
    keep defaults to half the dimension.
    """
    keep = a.shape[1] // 2 if keep is None else keep
    return distance_up_to_phase(a[:, :keep], b[:, :keep])
