"""
Two-point-measurement work statistics and the characteristic function.

These are the reference routes the interferometer is validated against:
- tpm_distribution: P(W) = Σ p_n⁰ p_{m|n} δ[W − (E′_m − E_n)]
- chi_direct: χ(u) = Tr[Û† e^{iuĤ_f} Û e^{−iuĤ_i} ρ₀] for real or complex u
- chi_from_distribution: Σ_k p_k e^{iuW_k}
- chi_commuting: Tr[e^{i(Ĥ_f−Ĥ_i)u} ρ₀] when Ĥ_i, Ĥ_f share the operator part
plus Jarzynski / Tasaki-Crooks estimators and moment extraction.
"""

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from workprobe.core.linalg import (
    ComplexMatrix,
    EigenSystem,
    commutes,
    dagger,
    expm,
    hermitian_eig,
)
from workprobe.logging import get_probe_logger
from workprobe.work.process import WorkProcess

logger = get_probe_logger(__name__)

HamiltonianLike = Union[ComplexMatrix, EigenSystem]

DEFAULT_BIN_TOL = 1e-9
DEFAULT_PRUNE = 1e-15
NEGATIVE_CLIP = 1e-14
COMMUTE_TOL = 1e-8
CROOKS_PHASE_TOL = 1e-8


class NonCommutingError(ValueError):
    """Raised when an operator pair required to commute does not."""

    pass


class UndefinedRatioError(ValueError):
    """Raised when the Crooks ratio has a vanishing denominator."""

    pass


class CrooksPhaseError(ValueError):
    """Raised when the Crooks ratio is not real-positive."""

    pass


@dataclass
class WorkDistribution:
    """
    Discrete work distribution, W strictly ascending.

    Example:
        P = tpm_distribution(h_i, h_f, u_tau, rho0)
        for w, p in P.points:
            ...
    """

    work: npt.NDArray[np.float64]
    probability: npt.NDArray[np.float64]

    def __post_init__(self):
        self.work = np.asarray(self.work, dtype=float)
        self.probability = np.asarray(self.probability, dtype=float)
        if self.work.shape != self.probability.shape:
            raise ValueError(
                f"work and probability differ in length: {self.work.shape} vs {self.probability.shape}"
            )
        if np.any(self.probability < -NEGATIVE_CLIP):
            raise ValueError(f"Negative probability: min p = {self.probability.min():.3e}")
        self.probability = np.clip(self.probability, 0.0, None)
        if np.any(np.diff(self.work) <= 0):
            raise ValueError("Work values must be strictly ascending")
        total = float(self.probability.sum())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"Work distribution is not normalised: Σp = {total!r}")

    @property
    def points(self) -> List[Tuple[float, float]]:
        return list(zip(self.work.tolist(), self.probability.tolist()))

    def __len__(self) -> int:
        return int(self.work.shape[0])


@dataclass(frozen=True)
class ChiSample:
    """A point (u, χ(u)); u may be complex."""

    u: complex
    value: complex


def _spectrum(h: HamiltonianLike) -> EigenSystem:
    return h if isinstance(h, EigenSystem) else hermitian_eig(h)


def _populations(
    eig: EigenSystem, rho0: ComplexMatrix, degeneracy_tol: float
) -> Tuple[ComplexMatrix, npt.NDArray[np.float64]]:
    """
    Eigenbasis of Ĥ_i in which ρ₀ is diagonal, with the populations in it.

    Inside a degenerate level the basis from eigh is arbitrary; ρ₀ is
    diagonalised within each level block so the first measurement
    is the projective one.
    """
    v = eig.eigenvectors.copy()
    energies = eig.eigenvalues
    start = 0
    for k in range(1, len(energies) + 1):
        if k == len(energies) or energies[k] - energies[start] > degeneracy_tol:
            if k - start > 1:
                block = v[:, start:k]
                v[:, start:k] = block @ hermitian_eig(dagger(block) @ rho0 @ block).eigenvectors
            start = k
    p0 = np.real(np.einsum("in,ij,jn->n", v.conj(), rho0, v))
    return v, np.where(p0 < 0, 0.0, p0)


def tpm_distribution(
    h_initial: HamiltonianLike,
    h_final: HamiltonianLike,
    u_tau: ComplexMatrix,
    rho0: ComplexMatrix,
    bin_tol: float = DEFAULT_BIN_TOL,
    prune: float = DEFAULT_PRUNE,
) -> WorkDistribution:
    """
    Two-point-measurement work distribution.

    Args:
        h_initial, h_final: Hamiltonians (or their spectra) before and after
        u_tau: Process unitary
        rho0: Initial state commuting with Ĥ_i
        bin_tol: Work values closer than this are merged (energy units)
        prune: Bins with total probability below this are dropped

    Raises:
        NonCommutingError: if ρ₀ does not commute with Ĥ_i
    """
    spec_i = _spectrum(h_initial)
    spec_f = _spectrum(h_final)
    if not commutes(rho0, spec_i.matrix(), COMMUTE_TOL):
        raise NonCommutingError(
            "Initial state does not commute with the initial Hamiltonian; "
            "the two-point scheme needs populations in the Ĥ_i eigenbasis"
        )

    vi, p0 = _populations(spec_i, rho0, bin_tol)
    vf = spec_f.eigenvectors
    transition = np.abs(dagger(vf) @ u_tau @ vi) ** 2

    work = (spec_f.eigenvalues[:, None] - spec_i.eigenvalues[None, :]).ravel()
    prob = (transition * p0[None, :]).ravel()

    order = np.argsort(work, kind="stable")
    work, prob = work[order], prob[order]

    bins_w: List[float] = []
    bins_p: List[float] = []
    start = 0
    for k in range(1, len(work) + 1):
        if k == len(work) or work[k] - work[start] > bin_tol:
            p = float(prob[start:k].sum())
            if p >= prune:
                w = float(np.average(work[start:k], weights=prob[start:k]))
                bins_w.append(w)
                bins_p.append(p)
            start = k

    logger.debug(f"TPM distribution: {len(work)} transitions merged into {len(bins_w)} bins")
    return WorkDistribution(work=np.array(bins_w), probability=np.array(bins_p))


def _gibbs_weighted_evolution(eig: EigenSystem, beta: float, u: complex) -> ComplexMatrix:
    """
    e^{−iuĤ} e^{−βĤ}/Z on the ground-shifted spectrum.

    Stays finite for complex u (u = iβ gives 1/Z without forming e^{βĤ}).
    """
    shifted = eig.eigenvalues - eig.ground_energy
    z_shift = float(np.sum(np.exp(-beta * shifted)))
    weights = np.exp(-(beta + 1j * u) * shifted) / z_shift
    return cmath.exp(-1j * u * eig.ground_energy) * eig.apply_diagonal(weights)


def chi_direct(
    u: complex,
    h_initial: HamiltonianLike,
    h_final: HamiltonianLike,
    u_tau: ComplexMatrix,
    rho0: Optional[ComplexMatrix] = None,
    beta: Optional[float] = None,
) -> ChiSample:
    """
    χ(u) = Tr[Û† e^{iuĤ_f} Û e^{−iuĤ_i} ρ₀].

    Args:
        u: Real or complex argument
        h_initial, h_final: Hamiltonians or their spectra
        u_tau: Process unitary
        rho0: Initial state; ignored when beta is given
        beta: If set, ρ₀ is taken as the Gibbs state of Ĥ_i at β and
              e^{−iuĤ_i}ρ₀ is evaluated on the shifted spectrum

    Returns:
        ChiSample(u, χ(u))
    """
    spec_i = _spectrum(h_initial)
    spec_f = _spectrum(h_final)

    if beta is not None:
        right = _gibbs_weighted_evolution(spec_i, beta, u)
    elif rho0 is not None:
        right = spec_i.exp(-1j * u) @ rho0
    else:
        raise ValueError("chi_direct needs rho0 or beta")

    left = dagger(u_tau) @ spec_f.exp(1j * u) @ u_tau
    value = complex(np.einsum("ij,ji->", left, right))
    return ChiSample(u=complex(u), value=value)


def chi_of_process(u: complex, process: WorkProcess) -> ChiSample:
    """chi_direct with the cached spectra of a WorkProcess."""
    return chi_direct(
        u,
        process.initial_spectrum,
        process.final_spectrum,
        process.unitary,
        rho0=process.rho0,
        beta=process.beta,
    )


def chi_commuting(
    u: complex, h_op: ComplexMatrix, g0: float, gtau: float, rho0: ComplexMatrix
) -> ChiSample:
    """
    χ_S(u) = Tr[e^{i(g_τ − g₀)ĥu} ρ₀] for Ĥ(λ) = g(λ)ĥ.
    """
    value = complex(np.trace(expm(h_op, 1j * (gtau - g0) * u) @ rho0))
    return ChiSample(u=complex(u), value=value)


def chi_from_distribution(u: complex, dist: WorkDistribution) -> ChiSample:
    """Σ_k p_k e^{iuW_k}."""
    value = complex(np.sum(dist.probability * np.exp(1j * u * dist.work)))
    return ChiSample(u=complex(u), value=value)


def crooks_ratio(forward_chi: complex, backward_chi: complex) -> complex:
    """
    χ′(−u + iβ)/χ(u); real-positive when the Tasaki-Crooks relation holds.

    Raises:
        UndefinedRatioError: if |χ(u)| < 1e-12
    """
    if abs(forward_chi) < 1e-12:
        raise UndefinedRatioError(f"|χ(u)| = {abs(forward_chi):.3e} is too small for the Crooks ratio")
    return backward_chi / forward_chi


def crooks_phase(forward_chi: complex, backward_chi: complex) -> float:
    """arg of the Crooks ratio; zero when the relation holds."""
    return cmath.phase(crooks_ratio(forward_chi, backward_chi))


def crooks_delta_f(
    forward_chi: complex,
    backward_chi: complex,
    beta: float,
    phase_tol: float = CROOKS_PHASE_TOL,
) -> float:
    """
    ΔF = (1/β) ln[χ′(−u + iβ)/χ(u)].

    Raises:
        UndefinedRatioError: if |χ(u)| < 1e-12
        CrooksPhaseError: if |arg ratio| > phase_tol (a negative ratio has arg π)
    """
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta}")
    ratio = crooks_ratio(forward_chi, backward_chi)
    phase = cmath.phase(ratio)
    if abs(phase) > phase_tol:
        raise CrooksPhaseError(
            f"Crooks ratio {ratio:.6e} is not real-positive: arg = {phase:.3e} > {phase_tol:.1e}"
        )
    return math.log(abs(ratio)) / beta


def crooks_free_energy(
    u: float,
    forward: WorkProcess,
    backward: WorkProcess,
    phase_tol: float = CROOKS_PHASE_TOL,
) -> float:
    """ΔF from one forward/backward pair at argument u."""
    beta = forward.beta
    chi_f = chi_of_process(u, forward).value
    chi_b = chi_of_process(-u + 1j * beta, backward).value
    return crooks_delta_f(chi_f, chi_b, beta, phase_tol)


def jarzynski_free_energy(process: WorkProcess) -> float:
    """ΔF = −(1/β) ln χ(iβ)."""
    beta = process.beta
    chi = chi_of_process(1j * beta, process).value
    return -math.log(chi.real) / beta


def work_moments(dist: WorkDistribution, k: int) -> float:
    """⟨W^k⟩ from the distribution."""
    if k < 0:
        raise ValueError(f"Moment order must be non-negative, got {k}")
    return float(np.sum(dist.probability * dist.work**k))


def moment_stencil(h: float) -> npt.NDArray[np.float64]:
    """Symmetric 5-point u-stencil (−2h, −h, 0, h, 2h)."""
    return np.array([-2 * h, -h, 0.0, h, 2 * h])


def chi_derivative_moments(chi_values: Sequence[complex], h: float, k: int) -> float:
    """
    ⟨W^k⟩ = (−i)^k d^kχ/du^k at u = 0 from χ sampled on moment_stencil(h).

    Central differences; k ∈ {0, 1, 2}.
    """
    f = np.asarray(chi_values, dtype=complex)
    if f.shape != (5,):
        raise ValueError(f"Expected χ on a 5-point stencil, got {f.shape[0]} samples")
    if k == 0:
        deriv = f[2]
    elif k == 1:
        deriv = (-f[4] + 8 * f[3] - 8 * f[1] + f[0]) / (12 * h)
    elif k == 2:
        deriv = (-f[4] + 16 * f[3] - 30 * f[2] + 16 * f[1] - f[0]) / (12 * h * h)
    else:
        raise ValueError(f"Moment order must be 0, 1 or 2, got {k}")
    return float(((-1j) ** k * deriv).real)


def mean_work_operator(process: WorkProcess) -> float:
    """⟨W⟩ = Tr[(Û†Ĥ_fÛ − Ĥ_i) ρ₀]."""
    u = process.unitary
    op = dagger(u) @ process.h_final @ u - process.h_initial
    return float(np.real(np.trace(op @ process.rho0)))


def dissipated_work(dist: WorkDistribution, delta_f: float) -> float:
    """⟨W⟩ − ΔF; non-negative for a thermal initial state."""
    return work_moments(dist, 1) - delta_f
