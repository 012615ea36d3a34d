from dataclasses import dataclass

import numpy as np

from kcbs_lab.core.types import ComplexMatrix3, RealVec3
from kcbs_lab.spin.types import EulerAngles

NUM_DIRECTIONS = 5


def successor(index: int) -> int:
    """Cyclic successor on the pentagram"""
    return (index + 1) % NUM_DIRECTIONS


@dataclass(frozen=True)
class PentagramDirections:
    """
    Five unit directions d_0..d_4 in cyclic order, where adjacent
    directions are orthogonal and all share the same polar angle
    """

    dirs: tuple[RealVec3, ...]

    def __post_init__(self):
        if len(self.dirs) != NUM_DIRECTIONS:
            raise ValueError(f"Expected {NUM_DIRECTIONS} directions, got {len(self.dirs)}")

    @property
    def polar_cosine(self) -> float:
        return float(self.dirs[0][2])

    def adjacent_overlaps(self) -> list[float]:
        """Dot products d_i . d_{i+1}, all zero for a valid pentagram"""
        return [float(np.dot(self.dirs[i], self.dirs[successor(i)])) for i in range(NUM_DIRECTIONS)]


@dataclass(frozen=True)
class KcbsObservables:
    # Dichotomic observables A_i = 2 S_i^2 - 1 in the |1>, |0>, |-1> basis
    a: tuple[ComplexMatrix3, ...]

    def correlator(self, index: int) -> ComplexMatrix3:
        """A_i A_{i+1}"""
        return self.a[index] @ self.a[successor(index)]


@dataclass(frozen=True)
class KcbsOperator:
    # S = sum_i A_i A_{i+1}
    s: ComplexMatrix3
    # Rotated operator D^dagger S D and the angles it was built from (if any)
    rotated: ComplexMatrix3 | None = None
    angles: EulerAngles | None = None

    @property
    def measured(self) -> ComplexMatrix3:
        """The operator that is measured: S' when rotated, S otherwise"""
        return self.s if self.rotated is None else self.rotated
