"""
Least squares trendlines for the maximally contextual retrits
"""

import math

import numpy as np
import numpy.typing as npt
from scipy import linalg

from kcbs_lab.common.errors import DegenerateDesignMatrix
from kcbs_lab.common.logger import logger
from kcbs_lab.maxviol.types import FitModel, FitResult, Table1Row

MODEL_COEFFICIENTS = {
    FitModel.PHI_LINEAR: ("c0", "c1"),
    FitModel.PHI_CORRECTED: ("c0", "c1", "c2"),
    FitModel.THETA_SINE: ("d0", "d1"),
}


def _design_matrix(model: FitModel, betas: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    ones = np.ones_like(betas)
    if model == FitModel.PHI_LINEAR:
        return np.column_stack([ones, betas])
    if model == FitModel.PHI_CORRECTED:
        return np.column_stack([ones, betas, np.sin(2 * betas)])
    return np.column_stack([ones, np.sin(betas)])


def _select(rows: list[Table1Row], beta_min: float | None, beta_max: float | None) -> list[Table1Row]:
    """Restricts the rows to an optional beta sub-range (inclusive)"""
    return [
        row
        for row in rows
        if (beta_min is None or row.beta >= beta_min) and (beta_max is None or row.beta <= beta_max)
    ]


def fit_model(
    model: FitModel,
    rows: list[Table1Row],
    beta_min: float | None = None,
    beta_max: float | None = None,
) -> FitResult:
    """
    Ordinary least squares of one trendline model on the table rows

    Raises DegenerateDesignMatrix when there are too few rows or the columns are
    linearly dependent on the selected betas
    """
    selected = _select(rows, beta_min, beta_max)
    names = MODEL_COEFFICIENTS[model]
    if len(selected) < len(names):
        raise DegenerateDesignMatrix(f"{model.value} needs at least {len(names)} rows, got {len(selected)}")

    betas = np.array([row.beta for row in selected])
    target = np.array([row.theta_min if model == FitModel.THETA_SINE else row.phi_min for row in selected])
    design = _design_matrix(model, betas)

    coefficients, _, rank, _ = linalg.lstsq(design, target)
    if rank < len(names):
        raise DegenerateDesignMatrix(f"Design matrix for {model.value} has rank {rank} < {len(names)}")

    residuals = target - design @ coefficients
    # Plain left-to-right accumulation so reruns are bitwise identical
    squared_sum = 0.0
    for residual in residuals:
        squared_sum += float(residual) ** 2
    rms = math.sqrt(squared_sum / len(residuals))

    result = FitResult(
        model_id=model,
        coefficients={name: float(value) for name, value in zip(names, coefficients)},
        residual_rms=rms,
        n_points=len(selected),
    )
    logger.info(f"Fit {model.value} on {len(selected)} rows: {result.coefficients} (rms={rms:.3e})")
    return result


def fit_phi_model(
    rows: list[Table1Row],
    corrected: bool,
    beta_min: float | None = None,
    beta_max: float | None = None,
) -> FitResult:
    """phi = c0 + c1 beta (+ c2 sin 2beta when corrected)"""
    model = FitModel.PHI_CORRECTED if corrected else FitModel.PHI_LINEAR
    return fit_model(model, rows, beta_min=beta_min, beta_max=beta_max)


def fit_theta_model(
    rows: list[Table1Row],
    beta_min: float | None = None,
    beta_max: float | None = None,
) -> FitResult:
    """theta = d0 + d1 sin(beta)"""
    return fit_model(FitModel.THETA_SINE, rows, beta_min=beta_min, beta_max=beta_max)


def evaluate_fit(fit: FitResult, beta: float) -> float:
    """Evaluates a fitted trendline at beta"""
    basis = _design_matrix(fit.model_id, np.array([beta]))[0]
    return float(sum(fit.coefficients[name] * value for name, value in zip(MODEL_COEFFICIENTS[fit.model_id], basis)))
