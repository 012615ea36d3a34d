import math
from dataclasses import dataclass, field
from enum import Enum

from kcbs_lab.analysis.types import RetritState


@dataclass(frozen=True)
class Table1Row:
    # Rotation about Y (alpha is fixed to zero)
    beta: float
    # Spherical parameters of the maximally contextual retrit
    # phi follows the continuation and may leave [0, 2pi)
    theta_min: float
    phi_min: float
    # Minimal expectation value reached at (theta_min, phi_min)
    value: float = math.nan

    @property
    def retrit(self) -> RetritState:
        return RetritState(theta=self.theta_min, phi=self.phi_min)


class FitModel(str, Enum):
    # phi = c0 + c1 beta
    PHI_LINEAR = "phi_linear"
    # phi = c0 + c1 beta + c2 sin(2 beta)
    PHI_CORRECTED = "phi_corrected"
    # theta = d0 + d1 sin(beta)
    THETA_SINE = "theta_sine"


@dataclass(frozen=True)
class FitResult:
    model_id: FitModel
    # Coefficient name -> value, in design matrix column order
    coefficients: dict[str, float]
    # Root mean square of the residuals
    residual_rms: float
    # Number of rows the model was fit on
    n_points: int


@dataclass
class AlphaRestrictionReport:
    """
    Outcome of checking that maximally contextual retrits only need alpha in {0, pi}
    """

    passed: bool = True
    # beta -> alpha grid points reaching the global minimum
    minimizers: dict[float, list[float]] = field(default_factory=dict)
    # beta values with a known degeneracy (reported, not counted as failures)
    flagged: list[float] = field(default_factory=list)
    # beta values with an unexplained alpha minimizer
    violations: list[float] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed
