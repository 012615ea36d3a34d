"""
Maximally contextual retrits as a function of beta (alpha = 0)

Rows are generated by continuation: each row's eigenvector sign is chosen to stay
closest to the previous row, and phi is unwrapped against the previous phi instead of
being reduced modulo 2pi. This reproduces the negative phi values past beta = 3pi/2.
"""

import math

import numpy as np

from kcbs_lab.analysis.minimizer import min_over_retrits
from kcbs_lab.analysis.types import TWO_PI, RetritState
from kcbs_lab.common.logger import logger
from kcbs_lab.kcbs.operator import KCBS_CENTER
from kcbs_lab.maxviol.types import AlphaRestrictionReport, Table1Row

TABLE_STEPS = 32
TABLE_BETA_STEP = math.pi / 16

# Seeds for beta = 0; the mirrored seed generates the antipodal branch
SEED = RetritState(theta=math.pi / 2, phi=3 * math.pi / 2)
MIRRORED_SEED = RetritState(theta=math.pi / 2, phi=math.pi / 2)

ALPHA_MATCH_TOLERANCE = 1e-3
MINIMUM_TOLERANCE = 1e-7

# Printed values, indexed by k for beta = k pi / 16
PUBLISHED_TABLE1 = [
    (1.57080, 4.71239),
    (1.43240, 4.57265),
    (1.29678, 4.42746),
    (1.16707, 4.27100),
    (1.04720, 4.09691),
    (0.94229, 3.89869),
    (0.85888, 3.67149),
    (0.80443, 3.41581),
    (0.78540, 3.14159),
    (0.80443, 2.86737),
    (0.85888, 2.61169),
    (0.94229, 2.38449),
    (1.04720, 2.18628),
    (1.16707, 2.01218),
    (1.29678, 1.85572),
    (1.43240, 1.71053),
    (1.57080, 1.57080),
    (1.70919, 1.43106),
    (1.84481, 1.28587),
    (1.97452, 1.12941),
    (2.09439, 0.95532),
    (2.19930, 0.75710),
    (2.28271, 0.52990),
    (2.33716, 0.27422),
    (2.35619, 0.0),
    (2.33716, -0.27422),
    (2.28271, -0.52990),
    (2.19930, -0.75710),
    (2.09439, -0.95532),
    (1.97452, -1.12941),
    (1.84481, -1.28587),
    (1.70919, -1.43106),
    (1.57080, -1.57080),
]


def _unwrap(phi: float, reference: float) -> float:
    """Shifts phi by a multiple of 2pi to land closest to the reference"""
    return phi + TWO_PI * round((reference - phi) / TWO_PI)


def published_table1() -> list[Table1Row]:
    """The printed table, with beta = k pi / 16"""
    return [
        Table1Row(beta=k * TABLE_BETA_STEP, theta_min=theta, phi_min=phi, value=KCBS_CENTER)
        for k, (theta, phi) in enumerate(PUBLISHED_TABLE1)
    ]


def generate_table1(mirrored: bool = False) -> list[Table1Row]:
    """
    Computes the 33 rows beta = k pi / 16, k = 0..32, at alpha = 0
    """
    seed = MIRRORED_SEED if mirrored else SEED
    previous_vector = seed.to_vector()
    previous_phi = seed.phi

    rows: list[Table1Row] = []
    for k in range(TABLE_STEPS + 1):
        beta = k * TABLE_BETA_STEP
        minimum = min_over_retrits(0.0, beta, hint=previous_vector)
        v = minimum.vector

        theta = math.acos(max(-1.0, min(1.0, float(v[2]))))
        phi = _unwrap(math.atan2(float(v[1]), float(v[0])), previous_phi)
        rows.append(Table1Row(beta=beta, theta_min=theta, phi_min=phi, value=minimum.value))

        previous_vector = v
        previous_phi = phi

    logger.info(f"Generated {len(rows)} maximal violation rows ({'mirrored' if mirrored else 'primary'} branch)")
    return rows


def compare_table1(generated: list[Table1Row], published: list[Table1Row]) -> tuple[float, float]:
    """
    Returns the largest absolute theta and phi deviations between two tables
    """
    if len(generated) != len(published):
        raise ValueError(f"Tables differ in length ({len(generated)} vs {len(published)})")

    max_theta = max(abs(g.theta_min - p.theta_min) for g, p in zip(generated, published))
    max_phi = max(abs(g.phi_min - p.phi_min) for g, p in zip(generated, published))
    return max_theta, max_phi


def _circular_distance(a: float, b: float) -> float:
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


def _near_any(alpha: float, targets: list[float]) -> bool:
    return any(_circular_distance(alpha, target) <= ALPHA_MATCH_TOLERANCE for target in targets)


def verify_alpha_restriction(beta_grid: list[float], n_alpha: int = 720) -> AlphaRestrictionReport:
    """
    Checks that, for each beta, the alpha grid points reaching 5 - 4 sqrt5 lie
    within 1e-3 rad of {0, pi}

    Known degeneracies are flagged instead of failing:
      - beta = 0 (mod pi): the rotation reduces to Z rotations, so every alpha is a minimizer
      - beta = pi/2 (mod pi): alpha = pi/2, 3pi/2 also reach the minimum, through the
        real superposition (|1> + |-1>)/sqrt2
    """
    alphas = TWO_PI * np.arange(n_alpha) / n_alpha
    report = AlphaRestrictionReport()

    for beta in beta_grid:
        minimizers = [
            float(alpha)
            for alpha in alphas
            if abs(min_over_retrits(float(alpha), beta).value - KCBS_CENTER) <= MINIMUM_TOLERANCE
        ]
        report.minimizers[beta] = minimizers

        if abs(math.sin(beta)) < 1e-9:
            report.flagged.append(beta)
            continue

        allowed = [0.0, math.pi]
        quarter_turn = abs(math.cos(beta)) < 1e-9
        if quarter_turn:
            allowed += [math.pi / 2, 3 * math.pi / 2]

        if not minimizers or not all(_near_any(alpha, allowed) for alpha in minimizers):
            report.violations.append(beta)
            report.passed = False
        elif quarter_turn and any(not _near_any(alpha, [0.0, math.pi]) for alpha in minimizers):
            report.flagged.append(beta)

    logger.info(
        f"Alpha restriction check over {len(beta_grid)} beta values: "
        f"{'passed' if report.passed else 'failed'} ({len(report.flagged)} flagged)"
    )
    return report
