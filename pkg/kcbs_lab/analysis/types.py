import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import numpy.typing as npt

from kcbs_lab.common.errors import ZeroState
from kcbs_lab.core.types import RealVec3

NORM_TOLERANCE = 1e-12
TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class QutritState:
    """
    Normalized amplitudes (a, b, c) over |1>, |0>, |-1>
    """

    amps: npt.NDArray[np.complex128]

    def __post_init__(self):
        norm = float(np.vdot(self.amps, self.amps).real)
        if self.amps.shape != (3,) or abs(norm - 1) > NORM_TOLERANCE:
            raise ValueError(f"Qutrit amplitudes must be a normalized triple (norm^2={norm})")

    @classmethod
    def from_amplitudes(cls, amplitudes: npt.ArrayLike) -> "QutritState":
        """Normalizes an arbitrary nonzero amplitude triple"""
        vec = np.asarray(amplitudes, dtype=np.complex128)
        if vec.shape != (3,):
            raise ValueError(f"Expected three amplitudes, got shape {vec.shape}")
        norm = float(np.linalg.norm(vec))
        if norm == 0 or not math.isfinite(norm):
            raise ZeroState("Cannot normalize a zero (or non-finite) state vector")
        return cls(amps=vec / norm)

    @property
    def is_real(self) -> bool:
        return bool(np.all(np.abs(self.amps.imag) < NORM_TOLERANCE))


@dataclass(frozen=True)
class RetritState:
    """
    Real qutrit parameterized on the unit sphere:
        (sin theta cos phi, sin theta sin phi, cos theta)
    phi is kept as given so that continuation output may leave [0, 2pi)
    """

    theta: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError(f"Retrit angles must be finite, got theta={self.theta}, phi={self.phi}")
        if not -NORM_TOLERANCE <= self.theta <= math.pi + NORM_TOLERANCE:
            raise ValueError(f"Retrit theta must be in [0, pi], got {self.theta}")

    def to_vector(self) -> RealVec3:
        return np.array(
            [
                math.sin(self.theta) * math.cos(self.phi),
                math.sin(self.theta) * math.sin(self.phi),
                math.cos(self.theta),
            ]
        )

    def canonical(self) -> "RetritState":
        """Returns the same point with phi reduced to [0, 2pi)"""
        phi = self.phi % TWO_PI
        return RetritState(theta=self.theta, phi=0.0 if phi >= TWO_PI else phi)


@dataclass(frozen=True)
class RegionSample:
    # Grid point on the retrit sphere
    theta: float
    phi: float
    # <psi|S'|psi> at that point
    value: float
    # True iff value < -3
    contextual: bool


@dataclass(frozen=True)
class CurveSample:
    # Rotation angles (alpha is unused for curves that only depend on beta)
    alpha: float
    beta: float
    value: float
    contextual: bool


class WindowKind(str, Enum):
    CONTEXTUAL = "contextual"
    NO_VIOLATION = "no-violation"


@dataclass(frozen=True)
class AngleWindow:
    """
    Interval of a rotation angle (radians) sharing one classification
    """

    lo: float
    hi: float
    kind: WindowKind

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"Window bounds must satisfy lo < hi, got ({self.lo}, {self.hi})")

    def contains(self, angle: float) -> bool:
        return self.lo <= angle <= self.hi

    def to_degrees(self) -> tuple[float, float]:
        return math.degrees(self.lo), math.degrees(self.hi)


@dataclass(frozen=True)
class RetritMinimum:
    # Minimal <psi|S'|psi> over real unit psi
    value: float
    # Minimizer in spherical parameters
    argmin: RetritState
    # Minimizer as a unit vector (sign already resolved)
    vector: RealVec3 = field(compare=False)
    # True if the smallest eigenvalue was degenerate
    degenerate: bool = False


@dataclass(frozen=True)
class PsiWindows:
    """
    Projections of the contextual region of (|1> + |-1>)/sqrt2 onto beta and alpha
    """

    beta: list[AngleWindow]
    alpha: list[AngleWindow]
