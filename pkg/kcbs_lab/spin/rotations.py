"""
Spin-1 operators and rotation matrices in the |1>, |0>, |-1> basis (hbar = 1)

The explicit Wigner matrix in wigner_d is the reference convention; the
factored form rot_z(gamma) @ rot_y(beta) @ rot_z(alpha) reproduces it
"""

import math
from functools import lru_cache

import numpy as np

from kcbs_lab.core.types import ComplexMatrix3, RealVec3
from kcbs_lab.spin.types import EulerAngles, SpinOperators

SQRT2 = math.sqrt(2.0)


@lru_cache
def spin_matrices() -> SpinOperators:
    """
    Standard spin-1 matrices, satisfying [sx, sy] = i sz cyclically
    """
    sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.complex128) / SQRT2
    sy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=np.complex128) / SQRT2
    sz = np.diag([1.0, 0.0, -1.0]).astype(np.complex128)

    # Cached values are shared, so freeze them
    for m in (sx, sy, sz):
        m.setflags(write=False)

    return SpinOperators(sx=sx, sy=sy, sz=sz)


def rot_z(alpha: float) -> ComplexMatrix3:
    """
    Rotation about the symmetry (Z) axis: diag(e^{-i alpha}, 1, e^{i alpha})
    """
    return np.diag([np.exp(-1j * alpha), 1.0, np.exp(1j * alpha)]).astype(np.complex128)


def rot_z_series(alpha: float) -> ComplexMatrix3:
    """
    Closed form of the exponential series for spin-1:
        exp(-i Sz alpha) = I - Sz^2 (1 - cos alpha) - i Sz sin alpha
    """
    sz = spin_matrices().sz
    return np.eye(3, dtype=np.complex128) - (sz @ sz) * (1 - math.cos(alpha)) - 1j * sz * math.sin(alpha)


def rot_y(beta: float) -> ComplexMatrix3:
    """
    Real spin-1 rotation about the Y axis (the Wigner small-d matrix)
    """
    c2 = math.cos(beta / 2) ** 2
    s2 = math.sin(beta / 2) ** 2
    sb = math.sin(beta) / SQRT2
    cb = math.cos(beta)
    return np.array(
        [
            [c2, -sb, s2],
            [sb, cb, -sb],
            [s2, sb, c2],
        ],
        dtype=np.complex128,
    )


def wigner_d(angles: EulerAngles) -> ComplexMatrix3:
    """
    Matrix representation of the general rotation operator D(alpha, beta, gamma)
    """
    a, b, g = angles.alpha, angles.beta, angles.gamma
    c2 = math.cos(b / 2) ** 2
    s2 = math.sin(b / 2) ** 2
    sb = math.sin(b) / SQRT2

    def phase(x: float) -> complex:
        return complex(math.cos(x), math.sin(x))

    return np.array(
        [
            [phase(-a - g) * c2, -phase(-g) * sb, phase(a - g) * s2],
            [phase(-a) * sb, math.cos(b), -phase(a) * sb],
            [phase(g - a) * s2, phase(g) * sb, phase(a + g) * c2],
        ],
        dtype=np.complex128,
    )


def wigner_d_factored(angles: EulerAngles) -> ComplexMatrix3:
    """Returns rot_z(gamma) @ rot_y(beta) @ rot_z(alpha)"""
    return rot_z(angles.gamma) @ rot_y(angles.beta) @ rot_z(angles.alpha)


def rotated_axis(angles: EulerAngles) -> RealVec3:
    """
    Direction of the rotated symmetry axis: (sin b cos g, sin b sin g, cos b)
    """
    b, g = angles.beta, angles.gamma
    return np.array([math.sin(b) * math.cos(g), math.sin(b) * math.sin(g), math.cos(b)])
