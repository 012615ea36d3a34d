from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

# Operators and rotations are dense 3x3 complex arrays in the |1>, |0>, |-1> basis
ComplexMatrix3 = npt.NDArray[np.complex128]
# Directions and real amplitude vectors
RealVec3 = npt.NDArray[np.float64]

# Eigenvalues closer than this are treated as one degenerate eigenspace
DEGENERACY_THRESHOLD = 1e-8


@dataclass(frozen=True)
class RealSymMatrix3:
    """
    Symmetric 3x3 real matrix stored as its upper triangle, so that
    symmetry holds exactly regardless of how the entries were produced
    """

    xx: float
    yy: float
    zz: float
    xy: float
    xz: float
    yz: float

    @classmethod
    def from_array(cls, array: npt.ArrayLike) -> "RealSymMatrix3":
        """Builds the matrix from the upper triangle of a 3x3 array"""
        m = np.asarray(array, dtype=np.float64)
        if m.shape != (3, 3):
            raise ValueError(f"Expected a 3x3 array, got shape {m.shape}")
        return cls(
            xx=float(m[0, 0]),
            yy=float(m[1, 1]),
            zz=float(m[2, 2]),
            xy=float(m[0, 1]),
            xz=float(m[0, 2]),
            yz=float(m[1, 2]),
        )

    @classmethod
    def diag(cls, a: float, b: float, c: float) -> "RealSymMatrix3":
        return cls(xx=a, yy=b, zz=c, xy=0.0, xz=0.0, yz=0.0)

    def to_array(self) -> npt.NDArray[np.float64]:
        """Returns the full (mirrored) 3x3 array"""
        return np.array(
            [
                [self.xx, self.xy, self.xz],
                [self.xy, self.yy, self.yz],
                [self.xz, self.yz, self.zz],
            ],
            dtype=np.float64,
        )

    def quadratic_form(self, v: npt.ArrayLike) -> float:
        """Returns v^T M v"""
        vec = np.asarray(v, dtype=np.float64)
        return float(vec @ self.to_array() @ vec)


class EigenDecomposition3(NamedTuple):
    # Eigenvalues sorted ascending
    eigenvalues: npt.NDArray[np.float64]
    # Orthonormal eigenvectors stored as columns, paired with eigenvalues
    eigenvectors: npt.NDArray[np.float64]

    def eigenvector(self, index: int) -> RealVec3:
        """Returns the eigenvector paired with eigenvalues[index]"""
        return self.eigenvectors[:, index]

    @property
    def min_is_degenerate(self) -> bool:
        """True if the smallest eigenvalue shares its eigenspace with the middle one"""
        return bool(abs(self.eigenvalues[1] - self.eigenvalues[0]) < DEGENERACY_THRESHOLD)

    def min_eigenspace(self) -> list[RealVec3]:
        """Returns a basis of the eigenspace of the smallest eigenvalue"""
        return [
            self.eigenvector(k)
            for k in range(3)
            if abs(self.eigenvalues[k] - self.eigenvalues[0]) < DEGENERACY_THRESHOLD
        ]

    def reconstruct(self) -> npt.NDArray[np.float64]:
        """Returns sum_k lambda_k v_k v_k^T"""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T
