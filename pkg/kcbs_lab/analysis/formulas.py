"""
Closed-form expectation values of the rotated KCBS operator S'(alpha, beta)

All functions accept floats or numpy arrays (broadcasting elementwise).
"""

import math
from enum import Enum

import numpy as np
import numpy.typing as npt

from kcbs_lab.common.errors import UnknownCase
from kcbs_lab.kcbs.operator import CLASSICAL_BOUND

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)
# Recurring coefficient 3 sqrt5 - 5
K = 3 * SQRT5 - 5

FloatOrArray = float | npt.NDArray[np.float64]


def classify(value: FloatOrArray) -> bool | npt.NDArray[np.bool_]:
    """
    True iff the value violates the KCBS inequality (strictly below -3)
    """
    if isinstance(value, np.ndarray):
        return value < CLASSICAL_BOUND
    return bool(value < CLASSICAL_BOUND)


def exp_zero_closed(beta: FloatOrArray) -> FloatOrArray:
    """<0|S'|0> = (5 - 3 sqrt5) cos 2b - sqrt5"""
    return (5 - 3 * SQRT5) * np.cos(2 * beta) - SQRT5


def exp_pm_closed(beta: FloatOrArray) -> FloatOrArray:
    """<+-1|S'|+-1> = ((3 sqrt5 - 5) cos 2b + sqrt5 - 5) / 2"""
    return 0.5 * (K * np.cos(2 * beta) + SQRT5 - 5)


def exp_psi_closed(alpha: FloatOrArray, beta: FloatOrArray) -> FloatOrArray:
    """
    Expectation for (|1> + |-1>)/sqrt2:
        (-5 + 2 sqrt5) cos^2 a + ((-5 + 3 sqrt5) cos 2b - sqrt5) sin^2 a
    """
    return (-5 + 2 * SQRT5) * np.cos(alpha) ** 2 + (K * np.cos(2 * beta) - SQRT5) * np.sin(alpha) ** 2


def f_closed(theta: FloatOrArray, phi: FloatOrArray, beta: FloatOrArray, alpha: FloatOrArray) -> FloatOrArray:
    """
    <psi|S'(alpha, beta)|psi> for the retrit (sin t cos p, sin t sin p, cos t)
    """
    sin2_t = np.sin(theta) ** 2
    cos2_t = np.cos(theta) ** 2
    cos_2b = np.cos(2 * beta)

    polar = 2 * (K * cos_2b + SQRT5 - 5) * cos2_t
    equatorial = (
        K
        * sin2_t
        * (cos_2b * (3 * np.cos(2 * phi) - 1) - 2 * SQRT2 * np.sin(2 * beta) * np.cos(alpha) * np.sin(2 * phi))
    )
    mixed = (
        4
        * K
        * np.sin(beta)
        * np.sin(2 * theta)
        * (np.sin(beta) * np.cos(2 * alpha) * np.cos(phi) + SQRT2 * np.cos(beta) * np.cos(alpha) * np.sin(phi))
    )
    offset = sin2_t * (K * np.cos(2 * phi) - SQRT5 - 5)

    return 0.25 * (polar + equatorial + mixed + offset)


class SpecialCase(Enum):
    """Rotations with a dedicated reduced formula, valued as (beta, alpha)"""

    NO_ROTATION = (0.0, 0.0)
    Y_HALF_PI = (math.pi / 2, 0.0)
    Y_QUARTER_PI = (math.pi / 4, 0.0)
    YZ_QUARTER_PI = (math.pi / 4, math.pi / 4)

    @classmethod
    def from_angles(cls, beta: float, alpha: float, tolerance: float = 1e-12) -> "SpecialCase":
        for case in cls:
            case_beta, case_alpha = case.value
            if abs(beta - case_beta) <= tolerance and abs(alpha - case_alpha) <= tolerance:
                return case
        raise UnknownCase(f"No special-case formula for (beta, alpha) = ({beta}, {alpha})")

    @property
    def beta(self) -> float:
        return self.value[0]

    @property
    def alpha(self) -> float:
        return self.value[1]


def f_special(case: SpecialCase | tuple[float, float], theta: FloatOrArray, phi: FloatOrArray) -> FloatOrArray:
    """
    Reduced forms of f_closed at fixed rotation angles

    `case` is a SpecialCase or a (beta, alpha) pair matching one
    """
    if not isinstance(case, SpecialCase):
        try:
            beta, alpha = case
        except (TypeError, ValueError):
            raise UnknownCase(f"Unrecognized special case tag: {case!r}")
        case = SpecialCase.from_angles(float(beta), float(alpha))

    sin2_t = np.sin(theta) ** 2
    cos2_t = np.cos(theta) ** 2
    sin_2t = np.sin(2 * theta)
    cos_2p = np.cos(2 * phi)

    if case == SpecialCase.NO_ROTATION:
        return 0.25 * (
            sin2_t * (K * cos_2p - SQRT5 - 5) + K * sin2_t * (3 * cos_2p - 1) + 2 * (4 * SQRT5 - 10) * cos2_t
        )

    if case == SpecialCase.Y_HALF_PI:
        return 0.25 * (
            sin2_t * (K * cos_2p - SQRT5 - 5)
            + K * sin2_t * (1 - 3 * cos_2p)
            + 4 * K * sin_2t * np.cos(phi)
            - 4 * SQRT5 * cos2_t
        )

    if case == SpecialCase.Y_QUARTER_PI:
        return 0.125 * (
            2 * K * sin2_t * (cos_2p - 2 * SQRT2 * np.sin(2 * phi))
            + 4 * K * sin_2t * (SQRT2 * np.sin(phi) + np.cos(phi))
            + K * np.cos(2 * theta)
            + SQRT5
            - 15
        )

    # YZ_QUARTER_PI
    return 0.125 * (
        4 * K * sin_2t * np.sin(phi)
        + 2 * K * sin2_t * (cos_2p - 2 * np.sin(2 * phi))
        + K * np.cos(2 * theta)
        + SQRT5
        - 15
    )
