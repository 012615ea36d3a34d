import math
from dataclasses import dataclass

from kcbs_lab.core.types import ComplexMatrix3


@dataclass(frozen=True)
class EulerAngles:
    """
    Euler rotation angles in radians, applied as Rz(gamma) Ry(beta) Rz(alpha)
    No range restriction, periodicity comes from the trigonometry
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(angle) for angle in (self.alpha, self.beta, self.gamma)):
            raise ValueError(f"Euler angles must be finite, got {self}")

    @classmethod
    def from_degrees(cls, alpha: float = 0.0, beta: float = 0.0, gamma: float = 0.0) -> "EulerAngles":
        return cls(alpha=math.radians(alpha), beta=math.radians(beta), gamma=math.radians(gamma))

    def to_degrees(self) -> tuple[float, float, float]:
        return math.degrees(self.alpha), math.degrees(self.beta), math.degrees(self.gamma)


@dataclass(frozen=True)
class SpinOperators:
    sx: ComplexMatrix3
    sy: ComplexMatrix3
    sz: ComplexMatrix3
