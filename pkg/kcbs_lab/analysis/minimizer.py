"""
Exact minimization of <psi|S'(alpha, beta)|psi> over real unit vectors psi

For real psi, <psi|S'|psi> = psi^T Re(S') psi, so the four-variable minimization
reduces to the smallest eigenpair of a 3x3 real symmetric matrix. Two independent
checks are provided: the closed-form minimum and a brute-force sphere search.
"""

import math

import numpy as np
from scipy import optimize

from kcbs_lab.analysis.formulas import K, f_closed
from kcbs_lab.analysis.types import TWO_PI, RetritMinimum, RetritState
from kcbs_lab.common.logger import logger
from kcbs_lab.core import linalg
from kcbs_lab.core.types import RealVec3
from kcbs_lab.kcbs.operator import KCBS_CORNER, rotated_kcbs
from kcbs_lab.spin.types import EulerAngles

# Components smaller than this are treated as exact zeros when resolving signs
SIGN_SNAP = 1e-12


def _snap(v: RealVec3) -> RealVec3:
    return np.where(np.abs(v) < SIGN_SNAP, 0.0, v)


def standalone_sign(v: RealVec3) -> RealVec3:
    """
    Resolves the v <-> -v ambiguity without a continuation hint:
    prefer v_y > 0, then v_z > 0, then v_x > 0
    """
    v = _snap(np.asarray(v, dtype=np.float64))
    for component in (1, 2, 0):
        if v[component] != 0:
            return v if v[component] > 0 else -v
    return v


def vector_to_retrit(v: RealVec3) -> RetritState:
    """
    theta = arccos(v_z), phi = atan2(v_y, v_x) reduced to [0, 2pi)
    """
    v = _snap(np.asarray(v, dtype=np.float64))
    theta = math.acos(max(-1.0, min(1.0, float(v[2]))))
    phi = math.atan2(float(v[1]), float(v[0])) % TWO_PI
    return RetritState(theta=theta, phi=0.0 if phi >= TWO_PI else phi)


def _closest_in_eigenspace(basis: list[RealVec3], hint: RealVec3) -> RealVec3:
    """
    Picks the unit vector of the eigenspace closest to the hint, signed to agree with it
    """
    if len(basis) == 1:
        v = basis[0]
    else:
        projection = sum(float(np.dot(b, hint)) * b for b in basis)
        norm = float(np.linalg.norm(projection))
        if norm > SIGN_SNAP:
            v = projection / norm
        else:
            # Hint is orthogonal to the whole eigenspace, fall back to the best basis vector
            v = max(basis, key=lambda b: abs(float(np.dot(b, hint))))

    return v if float(np.dot(v, hint)) >= 0 else -v


def min_over_retrits(alpha: float, beta: float, hint: RealVec3 | None = None) -> RetritMinimum:
    """
    Exact minimum of <psi|S'(alpha, beta)|psi> over real unit psi, with its minimizer

    If a continuation hint (unit vector) is given, the minimizer closest to it is
    returned; otherwise the standalone sign rule is applied to the first eigenvector
    """
    s_prime = rotated_kcbs(EulerAngles(alpha=alpha, beta=beta))
    decomposition = linalg.eig_sym3(linalg.real_part_sym(s_prime))

    if hint is not None:
        vector = _closest_in_eigenspace(decomposition.min_eigenspace(), np.asarray(hint, dtype=np.float64))
    else:
        vector = standalone_sign(decomposition.eigenvector(0))

    return RetritMinimum(
        value=float(decomposition.eigenvalues[0]),
        argmin=vector_to_retrit(vector),
        vector=vector,
        degenerate=decomposition.min_is_degenerate,
    )


def retrit_minimum_closed(alpha: float, beta: float) -> float:
    """
    Closed form of the retrit minimum

    The |0> row of D splits into orthogonal real and imaginary parts with squared
    norms 1 - x and x, where x = sin^2(alpha) sin^2(beta), which gives
        min = (-5 + 2 sqrt5) - (6 sqrt5 - 10) max(x, 1 - x)
    """
    x = math.sin(alpha) ** 2 * math.sin(beta) ** 2
    return KCBS_CORNER - 2 * K * max(x, 1 - x)


def search_retrit_minimum(
    alpha: float, beta: float, n_theta: int = 721, n_phi: int = 1441
) -> tuple[float, RetritState]:
    """
    Brute-force oracle for min_over_retrits: evaluates f_closed on a dense
    (theta, phi) grid, then refines the best grid point with Nelder-Mead
    """
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, TWO_PI, n_phi)
    theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing="ij")
    values = f_closed(theta_grid, phi_grid, beta, alpha)

    best = np.unravel_index(int(np.argmin(values)), values.shape)
    start = np.array([thetas[best[0]], phis[best[1]]])

    result = optimize.minimize(
        lambda p: f_closed(p[0], p[1], beta, alpha),
        start,
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 4000},
    )
    logger.debug(f"Grid search refined from {float(values[best]):.9f} to {float(result.fun):.9f}")

    if float(result.fun) < float(values[best]):
        theta, phi = float(result.x[0]), float(result.x[1])
        value = float(result.fun)
    else:
        theta, phi = float(start[0]), float(start[1])
        value = float(values[best])

    # Nelder-Mead may wander past the poles, so map back onto the canonical chart
    vector = np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)])
    return value, vector_to_retrit(vector)
