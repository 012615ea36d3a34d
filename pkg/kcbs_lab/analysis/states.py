import math
from enum import Enum

import numpy as np

from kcbs_lab.analysis.types import QutritState, RetritState
from kcbs_lab.common.errors import NonRealExpectation, NotHermitian
from kcbs_lab.core import linalg
from kcbs_lab.core.types import ComplexMatrix3

IMAGINARY_RESIDUE_TOLERANCE = 1e-8


class NamedState(str, Enum):
    # |0>, the neutrally polarized spin state
    ZERO = "zero"
    # |1>
    PLUS = "plus"
    # |-1>
    MINUS = "minus"
    # (|1> + |-1>) / sqrt2
    PSI = "psi"


NAMED_AMPLITUDES = {
    NamedState.ZERO: (0.0, 1.0, 0.0),
    NamedState.PLUS: (1.0, 0.0, 0.0),
    NamedState.MINUS: (0.0, 0.0, 1.0),
    NamedState.PSI: (1 / math.sqrt(2), 0.0, 1 / math.sqrt(2)),
}


def named_state(name: NamedState | str) -> QutritState:
    return QutritState.from_amplitudes(NAMED_AMPLITUDES[NamedState(name)])


def qutrit_state(amplitudes: list[complex] | tuple[complex, ...]) -> QutritState:
    """Normalizes an arbitrary amplitude triple"""
    return QutritState.from_amplitudes(amplitudes)


def retrit_to_state(retrit: RetritState) -> QutritState:
    """
    Real-amplitude state (sin t cos p, sin t sin p, cos t)
    """
    return QutritState(amps=retrit.to_vector().astype(np.complex128))


def expectation(state: QutritState, op: ComplexMatrix3, hermitian_tolerance: float = linalg.DEFAULT_TOLERANCE) -> float:
    """
    Returns <psi|op|psi> for a Hermitian operator

    Raises NotHermitian if op fails the hermiticity check (1e-10 by default), and
    NonRealExpectation if the imaginary residue exceeds 1e-8
    """
    op = linalg.as_matrix(op)
    if not linalg.is_hermitian(op, hermitian_tolerance):
        raise NotHermitian("Expectation values are only defined here for Hermitian operators")

    value = complex(np.vdot(state.amps, op @ state.amps))
    if abs(value.imag) > IMAGINARY_RESIDUE_TOLERANCE:
        raise NonRealExpectation(f"Expectation value has imaginary part {value.imag:.3e}")

    return value.real
