"""
Small dense linear algebra kernel over 3x3 matrices

Every operator in the package is a numpy array in the |1>, |0>, |-1> basis
(hbar = 1, angles in radians). Functions here never mutate their inputs.
"""

import numpy as np
import numpy.typing as npt
from scipy import linalg

from kcbs_lab.common.errors import NotHermitian, NotUnitary
from kcbs_lab.core.types import ComplexMatrix3, EigenDecomposition3, RealSymMatrix3

DEFAULT_TOLERANCE = 1e-10
UNITARY_TOLERANCE = 1e-8


def as_matrix(m: npt.ArrayLike) -> ComplexMatrix3:
    """
    Casts the input to a 3x3 complex array, validating shape and finiteness
    """
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.shape != (3, 3):
        raise ValueError(f"Expected a 3x3 matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("Matrix entries must be finite")
    return matrix


def identity() -> ComplexMatrix3:
    return np.eye(3, dtype=np.complex128)


def zeros() -> ComplexMatrix3:
    return np.zeros((3, 3), dtype=np.complex128)


def max_abs(m: npt.ArrayLike) -> float:
    """Max-entry norm, used for every matrix comparison"""
    return float(np.max(np.abs(m)))


def mat_mul(a: ComplexMatrix3, b: ComplexMatrix3) -> ComplexMatrix3:
    return as_matrix(a) @ as_matrix(b)


def adjoint(m: ComplexMatrix3) -> ComplexMatrix3:
    """Conjugate transpose"""
    return as_matrix(m).conj().T


def commutator(a: ComplexMatrix3, b: ComplexMatrix3) -> ComplexMatrix3:
    """Returns ab - ba"""
    a, b = as_matrix(a), as_matrix(b)
    return a @ b - b @ a


def is_hermitian(m: ComplexMatrix3, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    return max_abs(as_matrix(m) - adjoint(m)) <= tolerance


def is_unitary(u: ComplexMatrix3, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    return max_abs(adjoint(u) @ as_matrix(u) - identity()) <= tolerance


def conjugate_by(u: ComplexMatrix3, m: ComplexMatrix3) -> ComplexMatrix3:
    """
    Returns u^dagger m u

    Raises NotUnitary if u^dagger u deviates from the identity by more than 1e-8
    """
    u = as_matrix(u)
    deviation = max_abs(adjoint(u) @ u - identity())
    if deviation > UNITARY_TOLERANCE:
        raise NotUnitary(f"Conjugating matrix is not unitary (max deviation {deviation:.3e})")
    return adjoint(u) @ as_matrix(m) @ u


def real_part_sym(m: ComplexMatrix3, tolerance: float = DEFAULT_TOLERANCE) -> RealSymMatrix3:
    """
    Returns the entrywise real part of a Hermitian matrix as a symmetric real matrix

    For real vectors psi, psi^T Re(m) psi equals <psi|m|psi>, which is what
    lets the retrit minimization run as a real symmetric eigenproblem
    """
    m = as_matrix(m)
    if not is_hermitian(m, tolerance):
        raise NotHermitian(f"Matrix is not Hermitian within {tolerance:g}")
    return RealSymMatrix3.from_array(m.real)


def embed(m: RealSymMatrix3) -> ComplexMatrix3:
    """Embeds a real symmetric matrix as a complex 3x3 matrix"""
    return m.to_array().astype(np.complex128)


def eig_sym3(m: RealSymMatrix3) -> EigenDecomposition3:
    """
    Full eigendecomposition of a symmetric 3x3 real matrix

    Eigenvalues are ascending and eigenvectors (columns) orthonormal; within a
    degenerate eigenspace any orthonormal basis may be returned
    """
    array = m.to_array()
    if not np.all(np.isfinite(array)):
        raise ValueError("Matrix entries must be finite")
    eigenvalues, eigenvectors = linalg.eigh(array)
    return EigenDecomposition3(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def spectrum(m: ComplexMatrix3) -> npt.NDArray[np.float64]:
    """Ascending eigenvalues of a Hermitian matrix"""
    return linalg.eigvalsh(as_matrix(m))
