"""
Dense complex linear algebra.

Every operator, state and gate in workprobe is a dense ``complex128`` numpy
array. Exponentials are taken through the Hermitian eigendecomposition, so a
single decomposition serves a whole u-grid and complex scales (e^{-beta H},
e^{iuH} at u = i*beta) cost nothing extra.

Tensor ordering is fixed globally as (system ⊗ ancilla).
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import numpy.typing as npt
import scipy.linalg

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
STRUCTURAL_TOL = 1e-10
ORACLE_TOL = 1e-8


class NotHermitianError(ValueError):
    """Raised when a matrix expected to be Hermitian is not."""

    pass


class EigenConvergenceError(RuntimeError):
    """Raised when the Hermitian eigensolver fails to converge."""

    pass


@dataclass(frozen=True)
class EigenSystem:
    """
    Spectral decomposition M = V diag(λ) V†.

    eigenvalues are real and ascending; eigenvectors are the columns of a
    unitary matrix.
    """

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    def exp(self, scale: complex) -> ComplexMatrix:
        """Return V diag(e^{scale·λ}) V†."""
        return self.apply_diagonal(np.exp(scale * self.eigenvalues))

    def apply_diagonal(self, weights: npt.ArrayLike) -> ComplexMatrix:
        """Return V diag(weights) V† for weights indexed like the eigenvalues."""
        v = self.eigenvectors
        return (v * np.asarray(weights)[np.newaxis, :]) @ v.conj().T

    def matrix(self) -> ComplexMatrix:
        """Reassemble M from its spectrum."""
        return self.apply_diagonal(self.eigenvalues)


def as_complex(matrix: npt.ArrayLike) -> ComplexMatrix:
    """Coerce to a 2-D complex128 array."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"Expected a 2-D matrix, got array with shape {m.shape}")
    return m


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=np.complex128)


def dagger(matrix: ComplexMatrix) -> ComplexMatrix:
    return matrix.conj().T


def frobenius(matrix: npt.ArrayLike) -> float:
    return float(np.linalg.norm(matrix))


def hermiticity_residual(matrix: ComplexMatrix) -> float:
    """‖M − M†‖_F."""
    return frobenius(matrix - dagger(matrix))


def is_hermitian(matrix: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    """
    Check Hermiticity relative to the Frobenius norm.

    A zero matrix is Hermitian.
    """
    m = as_complex(matrix)
    if m.shape[0] != m.shape[1]:
        return False
    return hermiticity_residual(m) <= tol * max(frobenius(m), np.finfo(float).tiny)


def require_hermitian(matrix: ComplexMatrix, tol: float = HERMITIAN_TOL) -> ComplexMatrix:
    """
    Validate and return a Hermitian matrix.

    Raises:
        NotHermitianError: with the residual norm in the message
    """
    m = as_complex(matrix)
    if m.shape[0] != m.shape[1]:
        raise NotHermitianError(f"Matrix is not square: shape {m.shape}")
    if not is_hermitian(m, tol):
        raise NotHermitianError(
            f"Matrix is not Hermitian: ‖M − M†‖_F = {hermiticity_residual(m):.3e} "
            f"(‖M‖_F = {frobenius(m):.3e}, tol = {tol:.1e})"
        )
    return m


def hermitian_eig(matrix: ComplexMatrix, check: bool = True) -> EigenSystem:
    """
    Eigendecomposition of a Hermitian matrix.

    Args:
        matrix: Hermitian matrix
        check: Validate Hermiticity first (tolerance 1e-10·‖M‖_F)

    Returns:
        EigenSystem with ascending eigenvalues

    Raises:
        NotHermitianError: if check is enabled and M is not Hermitian
        EigenConvergenceError: if LAPACK does not converge
    """
    m = require_hermitian(matrix) if check else as_complex(matrix)
    try:
        values, vectors = scipy.linalg.eigh(m)
    except np.linalg.LinAlgError as e:
        raise EigenConvergenceError(
            f"Hermitian eigensolver did not converge for dimension {m.shape[0]}: {e}"
        ) from e
    return EigenSystem(
        eigenvalues=np.asarray(values, dtype=np.float64),
        eigenvectors=np.asarray(vectors, dtype=np.complex128),
    )


def expm(matrix: Union[ComplexMatrix, EigenSystem], scale: complex) -> ComplexMatrix:
    """
    Exponential e^{scale·M} of a Hermitian matrix.

    Args:
        matrix: Hermitian matrix or its precomputed EigenSystem
        scale: Complex scalar multiplying M

    Returns:
        V diag(e^{scale·λ}) V†; unitary for purely imaginary scale
    """
    system = matrix if isinstance(matrix, EigenSystem) else hermitian_eig(matrix)
    return system.exp(scale)


def kron(a: npt.ArrayLike, b: npt.ArrayLike) -> ComplexMatrix:
    """
    Kronecker product with the first factor as the major index.

    kron(A, B)[i·p + k, j·q + l] = A[i, j]·B[k, l] for B of shape (p, q).
    """
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def _split(matrix: ComplexMatrix, dim_s: int, dim_a: int) -> np.ndarray:
    m = as_complex(matrix)
    size = dim_s * dim_a
    if m.shape != (size, size):
        raise ValueError(
            f"Dimension mismatch: matrix {m.shape} is not ({size}, {size}) "
            f"for dim_S={dim_s}, dim_A={dim_a}"
        )
    return m.reshape(dim_s, dim_a, dim_s, dim_a)


def partial_trace_ancilla(matrix: ComplexMatrix, dim_s: int, dim_a: int) -> ComplexMatrix:
    """Tr_A of a (system ⊗ ancilla) operator; returns a dim_S × dim_S matrix."""
    return np.einsum("iaja->ij", _split(matrix, dim_s, dim_a))


def partial_trace_system(matrix: ComplexMatrix, dim_s: int, dim_a: int) -> ComplexMatrix:
    """Tr_S of a (system ⊗ ancilla) operator; returns a dim_A × dim_A matrix."""
    return np.einsum("iaib->ab", _split(matrix, dim_s, dim_a))


def distance_up_to_phase(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """
    min over θ of ‖A − e^{iθ}B‖_F.

    The minimising phase is arg Tr(B†A); the difference is then formed
    explicitly. Accepts rectangular blocks.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"Shape mismatch: {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return frobenius(a - phase * b)


def unitarity_residual(u: ComplexMatrix) -> float:
    """‖U†U − 1‖_F."""
    return frobenius(dagger(u) @ u - identity(u.shape[0]))


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return a @ b - b @ a


def commutes(a: ComplexMatrix, b: ComplexMatrix, tol: float) -> bool:
    """‖[A, B]‖_F ≤ tol·max(‖A‖_F‖B‖_F, 1)."""
    scale = max(frobenius(a) * frobenius(b), 1.0)
    return frobenius(commutator(a, b)) <= tol * scale


# Pauli matrices and ancilla projectors in the logical basis {|0⟩, |1⟩}
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PROJ_0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
PROJ_1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
