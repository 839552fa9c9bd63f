"""
Ancilla dephasing.

Phase damping multiplies the ancilla coherences by e^{−Γt} and leaves the
populations alone. Local rotations (Hadamards, σ_x flips) are taken as
instantaneous and noiseless; damping acts only around the conditional gates.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from workprobe.core.linalg import ComplexMatrix, as_complex


class DurationRule(Enum):
    """How the exposure time of the ancilla depends on u."""

    U_ONLY = "u_only"  # t = |u|
    U_PLUS_CONSTANT = "u_plus_constant"  # t = |u| + c₀


@dataclass(frozen=True)
class DephasingModel:
    """
    Dephasing at rate Γ over a u-dependent exposure time.

    Example:
        DephasingModel(gamma=0.5)                      # factor e^{−Γu}
        DephasingModel(0.5, DurationRule.U_PLUS_CONSTANT, constant_time=2.0)
    """

    gamma: float
    duration_rule: DurationRule = DurationRule.U_ONLY
    constant_time: float = 0.0

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError(f"Dephasing rate must be non-negative, got gamma={self.gamma}")
        if self.constant_time < 0:
            raise ValueError(f"constant_time must be non-negative, got {self.constant_time}")

    def duration(self, u: float) -> float:
        if self.duration_rule is DurationRule.U_PLUS_CONSTANT:
            return abs(u) + self.constant_time
        return abs(u)

    def coherence_factor(self, u: float) -> float:
        """Total factor e^{−Γ·duration(u)} applied to the readout."""
        return math.exp(-self.gamma * self.duration(u))


def dephase_ancilla(rho: ComplexMatrix, gamma: float, t: float) -> ComplexMatrix:
    """
    Phase-damping channel on the ancilla qubit.

    Args:
        rho: 2×2 ancilla state or (system ⊗ ancilla) joint state
        gamma: Rate Γ ≥ 0
        t: Exposure time ≥ 0 (math.inf fully dephases)

    Returns:
        New density matrix with ancilla-coherence blocks scaled by e^{−Γt}
    """
    if t < 0:
        raise ValueError(f"Dephasing time must be non-negative, got t={t}")
    if gamma < 0:
        raise ValueError(f"Dephasing rate must be non-negative, got gamma={gamma}")

    m = as_complex(rho)
    if gamma == 0 or t == 0:
        return m.copy()
    factor = math.exp(-gamma * t)

    dim = m.shape[0]
    if dim % 2:
        raise ValueError(f"State dimension {dim} has no qubit factor")
    out = m.reshape(dim // 2, 2, dim // 2, 2).copy()
    out[:, 0, :, 1] *= factor
    out[:, 1, :, 0] *= factor
    return out.reshape(dim, dim)


def purity(rho: ComplexMatrix) -> float:
    """Tr ρ²."""
    return float(np.real(np.einsum("ij,ji->", rho, rho)))
