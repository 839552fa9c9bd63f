"""
Oscillator model - Hamiltonians, drive profiles, thermal states.

Handles:
- Truncated Fock-space ladder operators (OscillatorSystem)
- Work-parameter trajectories λ_t (DriveProfile)
- Ĥ_free, Ĥ_osc(λ, φ), the ancilla-conditioned Ĥ′_micro and the CPB-coupled Ĥ_nano
- Gibbs states, partition functions and free-energy differences
- The nano → micro Hadamard-conjugation equivalence
- Full experiment description (Scenario)

Energies are in units of ω_S unless stated otherwise. Joint operators use the
(system ⊗ ancilla) ordering.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
import numpy.typing as npt

from workprobe.core.linalg import (
    PROJ_1,
    SIGMA_X,
    SIGMA_Z,
    ComplexMatrix,
    EigenSystem,
    hermitian_eig,
    identity,
    kron,
)

DEFAULT_CUTOFF = 64

HamiltonianLike = Union[ComplexMatrix, EigenSystem]


class DriveKind(Enum):
    """Shape of the work-parameter trajectory."""

    SUDDEN = "sudden"
    CONSTANT = "constant"
    TANH_RAMP = "tanh_ramp"
    TABULATED = "tabulated"


class Platform(Enum):
    """Physical realisation of the ancilla coupling."""

    MICRO = "micro"  # Λ-atom in an optomechanical cavity, coupling on |1⟩⟨1|_A
    NANO = "nano"  # nano beam coupled to a Cooper-pair box through Σ_x


@dataclass(frozen=True)
class DriveProfile:
    """
    Work-parameter trajectory λ_t.

    Examples:
        DriveProfile(DriveKind.TANH_RAMP, lambda_final=0.1, ramp_rate=1.0)
        DriveProfile(DriveKind.TABULATED, table=((0.0, 0.0), (1.0, 0.1)))
    """

    kind: DriveKind
    lambda_final: float = 0.0
    ramp_rate: float = 1.0
    table: Optional[Tuple[Tuple[float, float], ...]] = None

    def __post_init__(self):
        if self.kind is DriveKind.TABULATED:
            if not self.table or len(self.table) < 2:
                raise ValueError("Tabulated drive needs at least two (t, λ) samples")
            times = [t for t, _ in self.table]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError(f"Tabulated drive times must be strictly increasing: {times}")
        if self.kind is DriveKind.TANH_RAMP and self.ramp_rate < 0:
            raise ValueError(f"ramp_rate must be non-negative, got {self.ramp_rate}")

    @classmethod
    def tanh_ramp(cls, lambda_final: float, rate: float) -> "DriveProfile":
        return cls(DriveKind.TANH_RAMP, lambda_final=lambda_final, ramp_rate=rate)

    @classmethod
    def constant(cls, value: float) -> "DriveProfile":
        return cls(DriveKind.CONSTANT, lambda_final=value)

    @classmethod
    def sudden(cls, lambda_final: float) -> "DriveProfile":
        return cls(DriveKind.SUDDEN, lambda_final=lambda_final)

    @classmethod
    def tabulated(cls, samples: Sequence[Tuple[float, float]]) -> "DriveProfile":
        return cls(DriveKind.TABULATED, table=tuple((float(t), float(v)) for t, v in samples))

    def scaled(self, factor: float) -> "DriveProfile":
        """Same trajectory with every λ multiplied by factor."""
        table = None
        if self.table is not None:
            table = tuple((t, factor * v) for t, v in self.table)
        return replace(self, lambda_final=factor * self.lambda_final, table=table)

    @property
    def is_trivial(self) -> bool:
        if self.table is not None:
            return all(v == 0.0 for _, v in self.table)
        return self.lambda_final == 0.0


def eval_drive(profile: DriveProfile, t: npt.ArrayLike) -> Union[float, np.ndarray]:
    """
    Evaluate λ_t.

    Args:
        profile: Drive profile
        t: Time (scalar or array), t ≥ 0

    Returns:
        λ_t with the same shape as t. Tabulated profiles interpolate linearly
        and clamp to the end samples outside the table range.

    Raises:
        ValueError: for negative times
    """
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ValueError(f"Drive evaluated at negative time: min t = {times.min()}")

    kind = profile.kind
    if kind is DriveKind.CONSTANT:
        values = np.full_like(times, profile.lambda_final)
    elif kind is DriveKind.SUDDEN:
        values = np.where(times > 0, profile.lambda_final, 0.0)
    elif kind is DriveKind.TANH_RAMP:
        values = profile.lambda_final * np.tanh(profile.ramp_rate * times)
    else:
        ts, vs = zip(*profile.table)
        values = np.interp(times, ts, vs)

    if values.ndim == 0:
        return float(values)
    return values


def final_lambda(profile: DriveProfile, tau: float) -> float:
    """
    Work-parameter value defining the final Hamiltonian Ĥ(λ_τ).

    A sudden quench switches at 0⁺, so its final value is λ_final even at τ = 0.
    """
    if profile.kind is DriveKind.SUDDEN:
        return profile.lambda_final
    return float(eval_drive(profile, tau))


@dataclass
class OscillatorSystem:
    """
    Harmonic oscillator truncated to N Fock levels.

    b[n−1, n] = √n; the canonical commutator holds on the first N−1 levels only.
    """

    omega: float = 1.0
    cutoff: int = DEFAULT_CUTOFF
    b: ComplexMatrix = field(init=False, repr=False)
    bdag: ComplexMatrix = field(init=False, repr=False)

    def __post_init__(self):
        if self.cutoff < 2:
            raise ValueError(f"Fock cutoff must be at least 2, got {self.cutoff}")
        self.b = np.diag(np.sqrt(np.arange(1, self.cutoff, dtype=float)), k=1).astype(np.complex128)
        self.bdag = self.b.conj().T

    @property
    def number(self) -> ComplexMatrix:
        return np.diag(np.arange(self.cutoff, dtype=float)).astype(np.complex128)

    def quadrature(self, phi: float = 0.0) -> ComplexMatrix:
        """b†e^{iφ} + b e^{−iφ}."""
        return self.bdag * np.exp(1j * phi) + self.b * np.exp(-1j * phi)


def h_free(sys: OscillatorSystem) -> ComplexMatrix:
    """Ĥ_free = ω b†b = diag(0, ω, ..., (N−1)ω)."""
    return sys.omega * sys.number


def h_osc(sys: OscillatorSystem, lam: float, phi: float = 0.0) -> ComplexMatrix:
    """Ĥ_osc = Ĥ_free + λ(b†e^{iφ} + b e^{−iφ})."""
    return h_free(sys) + lam * sys.quadrature(phi)


def h_micro(sys: OscillatorSystem, lam: float, phi: float = 0.0) -> ComplexMatrix:
    """
    Ĥ′_micro = ω b†b ⊗ 1_A + λ(b†e^{iφ} + b e^{−iφ}) ⊗ |1⟩⟨1|_A.

    Block-diagonal in the ancilla: the |0⟩ block is Ĥ_free, the |1⟩ block Ĥ_osc(λ, φ).
    """
    return kron(h_free(sys), identity(2)) + kron(lam * sys.quadrature(phi), PROJ_1)


def h_nano(sys: OscillatorSystem, lam: float) -> ComplexMatrix:
    """
    Ĥ_nano = ω b†b ⊗ 1_A + λ(b + b†) ⊗ Σ_x,A.

    Σ_x = |a₊⟩⟨a₋| + h.c. is the logical σ_x under the charge-state mapping
    |a₋⟩ → |0⟩, |a₊⟩ → |1⟩.
    """
    return kron(h_free(sys), identity(2)) + kron(lam * sys.quadrature(0.0), SIGMA_X)


def h_nano_with_beam_term(sys: OscillatorSystem, lam: float) -> ComplexMatrix:
    """Ĥ_nano plus the extra local beam drive λ(b† + b) ⊗ 1_A from the added lead."""
    return h_nano(sys, lam) + kron(lam * sys.quadrature(0.0), identity(2))


def cpb_hadamard() -> ComplexMatrix:
    """
    Ĥ_A = (Σ_x + Σ_z)/√2 for the Cooper-pair box.

    Σ_z = |a₊⟩⟨a₊| − |a₋⟩⟨a₋| equals −σ_z under |a₋⟩ → |0⟩, |a₊⟩ → |1⟩.
    """
    return (SIGMA_X - SIGMA_Z) / math.sqrt(2.0)


def nano_to_micro(h_nano_plus: ComplexMatrix) -> ComplexMatrix:
    """
    Hadamard-conjugate the nano Hamiltonian on the ancilla.

    (1 ⊗ Ĥ_A) M (1 ⊗ Ĥ_A). Applied to h_nano_with_beam_term(sys, λ) this yields
    ω b†b ⊗ 1 + 2λ(b + b†) ⊗ |a₊⟩⟨a₊|, i.e. h_micro(sys, 2λ, φ=0).
    """
    dim_s = h_nano_plus.shape[0] // 2
    conj = kron(identity(dim_s), cpb_hadamard())
    return conj @ h_nano_plus @ conj


def ancilla_block(joint: ComplexMatrix, row: int, col: int) -> ComplexMatrix:
    """System operator ⟨row|_A M |col⟩_A of a (system ⊗ ancilla) matrix."""
    dim_s = joint.shape[0] // 2
    return joint.reshape(dim_s, 2, dim_s, 2)[:, row, :, col]


def _spectrum(h: HamiltonianLike) -> EigenSystem:
    return h if isinstance(h, EigenSystem) else hermitian_eig(h)


def thermal_state(h: HamiltonianLike, beta: float) -> ComplexMatrix:
    """
    Gibbs state e^{−βĤ}/Z.

    Args:
        h: Hermitian Hamiltonian or its EigenSystem
        beta: Inverse temperature; math.inf gives the ground state
              (uniform mixture over a degenerate ground level)

    Raises:
        ValueError: if beta ≤ 0
    """
    if not beta > 0:
        raise ValueError(f"Inverse temperature must be positive, got beta={beta}")
    eig = _spectrum(h)
    shifted = eig.eigenvalues - eig.ground_energy
    if math.isinf(beta):
        scale = max(abs(eig.ground_energy), 1.0)
        weights = (shifted <= 1e-12 * scale).astype(float)
    else:
        weights = np.exp(-beta * shifted)
    weights = weights / weights.sum()
    return eig.apply_diagonal(weights)


class FreeEnergy(NamedTuple):
    z_initial: float
    z_final: float
    delta_f: float


def log_partition(h: HamiltonianLike, beta: float) -> float:
    """ln Z evaluated on the ground-shifted spectrum."""
    eig = _spectrum(h)
    e0 = eig.ground_energy
    return -beta * e0 + math.log(float(np.sum(np.exp(-beta * (eig.eigenvalues - e0)))))


def partition_and_free_energy(
    h_initial: HamiltonianLike, h_final: HamiltonianLike, beta: float
) -> FreeEnergy:
    """
    Partition functions and ΔF = −(1/β) ln(Z_f/Z_i).

    ΔF is computed from shifted spectra, so it stays finite where Z itself
    would overflow; the returned Z values are exp(ln Z) and may be inf.
    """
    if not (beta > 0 and math.isfinite(beta)):
        raise ValueError(f"Inverse temperature must be positive and finite, got beta={beta}")
    ln_zi = log_partition(h_initial, beta)
    ln_zf = log_partition(h_final, beta)
    with np.errstate(over="ignore"):
        z_i = float(np.exp(ln_zi))
        z_f = float(np.exp(ln_zf))
    return FreeEnergy(z_initial=z_i, z_final=z_f, delta_f=-(ln_zf - ln_zi) / beta)


def beta_from_nbar(nbar: float, omega: float) -> float:
    """β = ln(1 + 1/n̄)/ω."""
    if nbar <= 0:
        raise ValueError(f"Mean occupation must be positive, got nbar={nbar}")
    return math.log1p(1.0 / nbar) / omega


def nbar_from_beta(beta: float, omega: float) -> float:
    """n̄ = 1/(e^{βω} − 1)."""
    return 1.0 / math.expm1(beta * omega)


@dataclass(frozen=True)
class Scenario:
    """
    Full experiment description.

    Temperature is given as beta or nbar (or both, if consistent). After
    construction ``beta`` is always set.

    Example:
        Scenario(omega=1.0, nbar=1.0, tau=10.0, gamma=0.5,
                 drive=DriveProfile.tanh_ramp(0.1, 1.0),
                 u_grid=tuple(np.arange(0, 20.0001, 0.05)))
    """

    omega: float = 1.0
    beta: Optional[float] = None
    nbar: Optional[float] = None
    phi: float = 0.0
    tau: float = 0.0
    gamma: float = 0.0
    cutoff: int = DEFAULT_CUTOFF
    drive: DriveProfile = field(default_factory=lambda: DriveProfile.constant(0.0))
    u_grid: Tuple[float, ...] = ()
    platform: Platform = Platform.MICRO

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.beta is None and self.nbar is None:
            raise ValueError("Scenario needs a temperature: set beta or nbar")
        if self.nbar is not None:
            from_nbar = beta_from_nbar(self.nbar, self.omega)
            if self.beta is None:
                object.__setattr__(self, "beta", from_nbar)
            elif abs(nbar_from_beta(self.beta, self.omega) - self.nbar) > 1e-10:
                raise ValueError(
                    f"beta={self.beta} and nbar={self.nbar} disagree: "
                    f"1/(e^(βω)−1) = {nbar_from_beta(self.beta, self.omega)}"
                )
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be positive and finite, got {self.beta}")
        if self.cutoff < 2:
            raise ValueError(f"cutoff must be at least 2, got {self.cutoff}")
        if self.tau < 0:
            raise ValueError(f"tau must be non-negative, got {self.tau}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        object.__setattr__(self, "u_grid", tuple(float(u) for u in self.u_grid))

    def system(self) -> OscillatorSystem:
        return OscillatorSystem(omega=self.omega, cutoff=self.cutoff)

    def effective_drive(self) -> DriveProfile:
        """
        Drive seen by the conditional dynamics.

        On the nano platform the added beam term and the CPB Hadamard turn the
        Σ_x coupling into 2λ_t on |a₊⟩⟨a₊|.
        """
        if self.platform is Platform.NANO:
            return self.drive.scaled(2.0)
        return self.drive

    @property
    def lambda_final(self) -> float:
        """λ_τ of the effective drive."""
        return final_lambda(self.effective_drive(), self.tau)

    def with_cutoff(self, cutoff: int) -> "Scenario":
        return replace(self, cutoff=cutoff)
