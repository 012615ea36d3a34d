class KcbsError(Exception):
    """Base class for all errors raised by kcbs_lab"""


class NotUnitary(KcbsError, ValueError):
    """Raised when a matrix expected to be unitary fails the unitarity check"""


class NotHermitian(KcbsError, ValueError):
    """Raised when a matrix expected to be Hermitian fails the hermiticity check"""


class NonRealExpectation(KcbsError, ArithmeticError):
    """Raised when an expectation value carries a non-negligible imaginary part"""


class ConstructionMismatch(KcbsError, RuntimeError):
    """Raised when the assembled KCBS operator does not reproduce its closed form"""


class UnknownCase(KcbsError, ValueError):
    """Raised when a special-case formula is requested for an unsupported rotation"""


class DegenerateDesignMatrix(KcbsError, ValueError):
    """Raised when a least squares design matrix is rank deficient"""


class ZeroState(KcbsError, ValueError):
    """Raised when a state vector with zero norm is normalized"""


class IndexOutOfRange(KcbsError, IndexError):
    """Raised when an observable index falls outside 0..4"""
