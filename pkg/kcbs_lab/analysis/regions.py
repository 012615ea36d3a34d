"""
Contextuality regions over states and rotation angles

Grid scans are deterministic: theta runs over [0, pi] inclusive, phi over [0, 2pi)
half-open, and samples are emitted row-major (theta outer, phi inner).
"""

import math
from typing import Callable

import numpy as np
from scipy import optimize

from kcbs_lab.analysis.formulas import (
    K,
    SQRT5,
    classify,
    exp_pm_closed,
    exp_psi_closed,
    exp_zero_closed,
    f_closed,
)
from kcbs_lab.analysis.minimizer import min_over_retrits
from kcbs_lab.analysis.types import (
    TWO_PI,
    AngleWindow,
    CurveSample,
    PsiWindows,
    RegionSample,
    WindowKind,
)
from kcbs_lab.common.logger import logger
from kcbs_lab.kcbs.operator import CLASSICAL_BOUND, KCBS_CORNER

BISECTION_XTOL = 1e-4
MAX_BETA_STEP = math.radians(0.1)


def zero_state_boundary() -> float:
    """
    beta* solving <0|S'|0> = -3:  beta* = arccos((sqrt5 - 3) / (5 - 3 sqrt5)) / 2
    """
    return 0.5 * math.acos((SQRT5 - 3) / (5 - 3 * SQRT5))


def zero_state_windows() -> list[AngleWindow]:
    """
    Contextual beta windows for |0> over one period: (-beta*, beta*) and (pi - beta*, pi + beta*)

    The first window straddles beta = 0 and is reported with a negative lower bound
    """
    boundary = zero_state_boundary()
    return [
        AngleWindow(lo=-boundary, hi=boundary, kind=WindowKind.CONTEXTUAL),
        AngleWindow(lo=math.pi - boundary, hi=math.pi + boundary, kind=WindowKind.CONTEXTUAL),
    ]


def split_at_zero(windows: list[AngleWindow]) -> list[AngleWindow]:
    """
    Rewrites windows onto [0, 2pi): a window with a negative lower bound becomes
    [0, hi] and [lo + 2pi, 2pi], and the result is ordered by lower bound
    """
    result = []
    for window in windows:
        if window.lo < 0:
            result.append(AngleWindow(lo=0.0, hi=window.hi, kind=window.kind))
            result.append(AngleWindow(lo=window.lo + TWO_PI, hi=TWO_PI, kind=window.kind))
        else:
            result.append(window)
    return sorted(result, key=lambda window: window.lo)


def pm_minimum() -> tuple[float, float]:
    """
    Minimum of <+-1|S'|+-1> over beta, reached where cos 2b = -1

    Returns (value, beta); the value is -sqrt5, which never crosses -3
    """
    beta = math.pi / 2
    return float(exp_pm_closed(beta)), beta


def psi_boundary() -> float:
    """
    Angle where sin^2 a sin^2 b reaches (sqrt5 - 1) / (3 sqrt5 - 5), i.e. where
    <psi|S'|psi> = -3 along a = 90 deg (or b = 90 deg)
    """
    return math.asin(math.sqrt((KCBS_CORNER - CLASSICAL_BOUND) / (2 * K)))


def psi_windows() -> PsiWindows:
    """
    Contextual windows of (|1> + |-1>)/sqrt2

    The contextual region is sin^2(a) sin^2(b) > (sqrt5 - 1) / (3 sqrt5 - 5); these are
    its projections onto beta (within one half period) and onto alpha (full period)
    """
    edge = psi_boundary()
    return PsiWindows(
        beta=[AngleWindow(lo=edge, hi=math.pi - edge, kind=WindowKind.CONTEXTUAL)],
        alpha=[
            AngleWindow(lo=edge, hi=math.pi - edge, kind=WindowKind.CONTEXTUAL),
            AngleWindow(lo=math.pi + edge, hi=TWO_PI - edge, kind=WindowKind.CONTEXTUAL),
        ],
    )


def sample_curve(curve: str, n_samples: int) -> list[CurveSample]:
    """
    Samples one of the closed-form curves over a full period

    `zero` and `pm` sweep beta over [0, 2pi); `psi` sweeps alpha and beta on an
    n_samples x n_samples grid, row-major in alpha then beta
    """
    if n_samples < 2:
        raise ValueError(f"At least 2 samples are required, got {n_samples}")

    angles = TWO_PI * np.arange(n_samples) / n_samples

    if curve in ("zero", "pm"):
        formula = exp_zero_closed if curve == "zero" else exp_pm_closed
        values = formula(angles)
        return [
            CurveSample(alpha=0.0, beta=float(b), value=float(v), contextual=bool(classify(float(v))))
            for b, v in zip(angles, values)
        ]

    if curve == "psi":
        alpha_grid, beta_grid = np.meshgrid(angles, angles, indexing="ij")
        values = exp_psi_closed(alpha_grid, beta_grid)
        return [
            CurveSample(alpha=float(a), beta=float(b), value=float(v), contextual=bool(classify(float(v))))
            for a, b, v in zip(alpha_grid.ravel(), beta_grid.ravel(), values.ravel())
        ]

    raise ValueError(f"Unknown curve '{curve}', expected one of zero, pm, psi")


def scan_sphere(alpha: float, beta: float, n_theta: int, n_phi: int) -> list[RegionSample]:
    """
    Classifies a uniform grid of retrits for a fixed rotation
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"Grid resolutions must be at least 2, got n_theta={n_theta}, n_phi={n_phi}")

    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = TWO_PI * np.arange(n_phi) / n_phi
    theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing="ij")
    values = f_closed(theta_grid, phi_grid, beta, alpha)

    return [
        RegionSample(theta=float(t), phi=float(p), value=float(v), contextual=bool(v < CLASSICAL_BOUND))
        for t, p, v in zip(theta_grid.ravel(), phi_grid.ravel(), values.ravel())
    ]


def contextual_fraction(samples: list[RegionSample]) -> float:
    """Share of contextual samples in a scan"""
    if not samples:
        return 0.0
    return sum(sample.contextual for sample in samples) / len(samples)


def _refine_edge(objective: Callable[[float], float], left: float, right: float, xtol: float) -> float:
    """Bisects a sign change of the objective between two grid points"""
    edge = optimize.bisect(objective, left, right, xtol=xtol)
    logger.debug(f"Refined window edge in [{left:.6f}, {right:.6f}] to {edge:.6f}")
    return float(edge)


def no_violation_windows(alpha: float, beta_step: float, xtol: float = BISECTION_XTOL) -> list[AngleWindow]:
    """
    Maximal beta intervals over one period where no retrit violates the inequality,
    i.e. min_over_retrits(alpha, beta) >= -3

    Beta is swept with the given step (at most 0.1 deg) and every edge is refined by
    bisection. A window running through beta = 0 is reported once with a negative
    lower bound.
    """
    if not 0 < beta_step <= MAX_BETA_STEP + 1e-15:
        raise ValueError(f"beta_step must be in (0, {MAX_BETA_STEP:.6f}] rad, got {beta_step}")

    def margin(beta: float) -> float:
        return min_over_retrits(alpha, beta).value - CLASSICAL_BOUND

    n_steps = math.ceil(TWO_PI / beta_step)
    betas = TWO_PI * np.arange(n_steps + 1) / n_steps
    margins = [margin(float(b)) for b in betas]
    safe = [m >= 0 for m in margins]

    # Collect runs of non-violating samples as (start, end) index pairs
    runs: list[tuple[int, int]] = []
    start: int | None = None
    for index, is_safe in enumerate(safe):
        if is_safe and start is None:
            start = index
        if not is_safe and start is not None:
            runs.append((start, index - 1))
            start = None
    if start is not None:
        runs.append((start, n_steps))

    if len(runs) == 1 and runs[0] == (0, n_steps):
        return [AngleWindow(lo=0.0, hi=TWO_PI, kind=WindowKind.NO_VIOLATION)]

    windows: list[tuple[float, float]] = []
    for first, last in runs:
        lo = 0.0 if first == 0 else _refine_edge(margin, float(betas[first - 1]), float(betas[first]), xtol)
        hi = TWO_PI if last == n_steps else _refine_edge(margin, float(betas[last]), float(betas[last + 1]), xtol)
        windows.append((lo, hi))

    # The sweep is periodic, so a run touching both ends is a single window through 0
    if len(windows) > 1 and runs[0][0] == 0 and runs[-1][1] == n_steps:
        wrapped = (windows[-1][0] - TWO_PI, windows[0][1])
        windows = [wrapped] + windows[1:-1]

    result = [AngleWindow(lo=lo, hi=hi, kind=WindowKind.NO_VIOLATION) for lo, hi in windows if lo < hi]
    logger.info(f"Found {len(result)} no-violation window{'' if len(result) == 1 else 's'} at alpha={alpha:.6f}")
    return result
