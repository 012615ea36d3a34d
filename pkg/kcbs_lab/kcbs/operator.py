"""
Construction of the KCBS operator for a spin-1 system

The five observables are assembled in the Cartesian representation, where the
spin-0 state along a direction n is n itself, and then moved once into the
|1>, |0>, |-1> basis. Reproducing the diagonal closed form of S certifies
both the pentagram coordinates and the basis change.
"""

import math
from functools import lru_cache

import numpy as np

from kcbs_lab.common.errors import ConstructionMismatch, IndexOutOfRange
from kcbs_lab.common.logger import logger
from kcbs_lab.core import linalg
from kcbs_lab.core.types import ComplexMatrix3
from kcbs_lab.kcbs.types import (
    NUM_DIRECTIONS,
    KcbsObservables,
    KcbsOperator,
    PentagramDirections,
    successor,
)
from kcbs_lab.spin.rotations import wigner_d
from kcbs_lab.spin.types import EulerAngles

SQRT5 = math.sqrt(5.0)

# Diagonal of S: corners for |+-1>, centre for |0>
KCBS_CORNER = -5 + 2 * SQRT5
KCBS_CENTER = 5 - 4 * SQRT5
# Non-contextual models satisfy <S> >= CLASSICAL_BOUND
CLASSICAL_BOUND = -3.0

CONSTRUCTION_TOLERANCE = 1e-10

# Columns are |1> = (-x - iy)/sqrt2, |0> = z, |-1> = (x - iy)/sqrt2 in Cartesian coordinates
CARTESIAN_TO_SPHERICAL = np.array(
    [
        [-1 / math.sqrt(2), 0, 1 / math.sqrt(2)],
        [-1j / math.sqrt(2), 0, -1j / math.sqrt(2)],
        [0, 1, 0],
    ],
    dtype=np.complex128,
)


def kcbs_diagonal() -> ComplexMatrix3:
    """The closed form diag(-5 + 2 sqrt5, 5 - 4 sqrt5, -5 + 2 sqrt5)"""
    return np.diag([KCBS_CORNER, KCBS_CENTER, KCBS_CORNER]).astype(np.complex128)


def pentagram_directions() -> PentagramDirections:
    """
    Builds d_k = (sin T cos(4 pi k / 5), sin T sin(4 pi k / 5), cos T)
    with cos^2 T = cos(pi/5) / (1 + cos(pi/5)), which makes d_k and d_{k+1} orthogonal
    """
    cos_pi5 = math.cos(math.pi / 5)
    cos_theta = math.sqrt(cos_pi5 / (1 + cos_pi5))
    sin_theta = math.sqrt(1 - cos_theta**2)

    dirs = []
    for k in range(NUM_DIRECTIONS):
        azimuth = 4 * math.pi * k / NUM_DIRECTIONS
        dirs.append(np.array([sin_theta * math.cos(azimuth), sin_theta * math.sin(azimuth), cos_theta]))

    return PentagramDirections(dirs=tuple(dirs))


def basis_change_cartesian_to_spherical(m_cart: ComplexMatrix3) -> ComplexMatrix3:
    """
    Maps an operator from the Cartesian spin-1 representation into the |m> basis
    """
    return linalg.conjugate_by(CARTESIAN_TO_SPHERICAL, m_cart)


def observable_a(index: int, dirs: PentagramDirections) -> ComplexMatrix3:
    """
    A_i = 2 S_i^2 - 1 = I - 2 P_i, where P_i projects onto the spin-0 state along d_i
    """
    if not 0 <= index < NUM_DIRECTIONS:
        raise IndexOutOfRange(f"Observable index must be in 0..{NUM_DIRECTIONS - 1}, got {index}")

    d = dirs.dirs[index]
    a_cart = np.eye(3) - 2 * np.outer(d, d)
    return basis_change_cartesian_to_spherical(a_cart)


def kcbs_observables(dirs: PentagramDirections | None = None) -> KcbsObservables:
    dirs = dirs or pentagram_directions()
    return KcbsObservables(a=tuple(observable_a(i, dirs) for i in range(NUM_DIRECTIONS)))


def assemble_kcbs(observables: KcbsObservables) -> ComplexMatrix3:
    """Returns sum_i A_i A_{i+1}"""
    s = linalg.zeros()
    for i in range(NUM_DIRECTIONS):
        s = s + observables.a[i] @ observables.a[successor(i)]
    return s


@lru_cache
def kcbs_operator() -> KcbsOperator:
    """
    Builds S = A_0 A_1 + A_1 A_2 + A_2 A_3 + A_3 A_4 + A_4 A_0 and checks it against
    the diagonal closed form

    The result is cached for the life of the process and is read-only
    """
    s = assemble_kcbs(kcbs_observables())

    deviation = linalg.max_abs(s - kcbs_diagonal())
    if deviation > CONSTRUCTION_TOLERANCE:
        raise ConstructionMismatch(f"Assembled KCBS operator deviates from the closed form by {deviation:.3e}")
    logger.debug(f"KCBS operator assembled (max deviation from closed form {deviation:.3e})")

    s.setflags(write=False)
    return KcbsOperator(s=s)


def rotated_kcbs(angles: EulerAngles) -> ComplexMatrix3:
    """
    S' = D^dagger S D, which only depends on alpha and beta
    """
    return linalg.conjugate_by(wigner_d(angles), kcbs_operator().s)


def rotate(operator: KcbsOperator, angles: EulerAngles) -> KcbsOperator:
    """Returns a copy of the operator carrying its rotated form"""
    rotated = linalg.conjugate_by(wigner_d(angles), operator.s)
    return KcbsOperator(s=operator.s, rotated=rotated, angles=angles)
