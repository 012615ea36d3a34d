"""
Self-check suite run by `kcbs verify`

Each check recomputes a known identity or published value through the library and
reports the worst deviation it saw
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from kcbs_lab.analysis import formulas, minimizer, regions, states
from kcbs_lab.analysis.formulas import SpecialCase
from kcbs_lab.analysis.types import TWO_PI, RetritState
from kcbs_lab.common.logger import logger
from kcbs_lab.config.profiles import RunProfile
from kcbs_lab.core import linalg
from kcbs_lab.kcbs import operator
from kcbs_lab.maxviol import table
from kcbs_lab.spin import rotations
from kcbs_lab.spin.types import EulerAngles

VERIFY_SEED = 20240501

Rng = np.random.Generator


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def format_line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def _random_angles(rng: Rng, count: int) -> list[EulerAngles]:
    return [EulerAngles(*map(float, rng.uniform(0, TWO_PI, size=3))) for _ in range(count)]


def _within(name: str, deviation: float, tolerance: float) -> CheckResult:
    detail = f"max deviation {deviation:.3e} (< {tolerance:g})"
    return CheckResult(name=name, passed=deviation < tolerance, detail=detail)


def check_rot_z_series(rng: Rng, profile: RunProfile) -> CheckResult:
    """Z rotation matrix against its exponential series closed form"""
    deviation = max(
        linalg.max_abs(rotations.rot_z(alpha) - rotations.rot_z_series(alpha))
        for alpha in rng.uniform(0, TWO_PI, size=100)
    )
    return _within("rot-z-series", deviation, 1e-12)


def check_wigner_factorization(rng: Rng, profile: RunProfile) -> CheckResult:
    deviation = max(
        linalg.max_abs(rotations.wigner_d(angles) - rotations.wigner_d_factored(angles))
        for angles in _random_angles(rng, 100)
    )
    return _within("wigner-factorization", deviation, 1e-12)


def check_kcbs_reconstruction(rng: Rng, profile: RunProfile) -> CheckResult:
    """Sum of adjacent observable products against diag(s1, s0, s1)"""
    assembled = operator.assemble_kcbs(operator.kcbs_observables())
    deviation = linalg.max_abs(assembled - operator.kcbs_diagonal())
    return _within("kcbs-reconstruction", deviation, 1e-10)


def check_spin_commutators(rng: Rng, profile: RunProfile) -> CheckResult:
    spin = rotations.spin_matrices()
    cyclic = [(spin.sx, spin.sy, spin.sz), (spin.sy, spin.sz, spin.sx), (spin.sz, spin.sx, spin.sy)]
    deviation = max(linalg.max_abs(linalg.commutator(a, b) - 1j * c) for a, b, c in cyclic)
    return _within("spin-commutators", deviation, 1e-12)


def check_z_invariance(rng: Rng, profile: RunProfile) -> CheckResult:
    s = operator.kcbs_operator().s
    deviation = max(
        linalg.max_abs(operator.rotated_kcbs(EulerAngles(gamma=float(gamma))) - s)
        for gamma in rng.uniform(0, TWO_PI, size=100)
    )
    return _within("z-axis-invariance", deviation, 1e-12)


def check_spectrum_invariance(rng: Rng, profile: RunProfile) -> CheckResult:
    expected = np.sort(np.real(np.diag(operator.kcbs_diagonal())))
    deviation = max(
        float(np.max(np.abs(linalg.spectrum(operator.rotated_kcbs(angles)) - expected)))
        for angles in _random_angles(rng, 100)
    )
    return _within("spectrum-invariance", deviation, 1e-10)


def check_operator_properties(rng: Rng, profile: RunProfile) -> CheckResult:
    """D(alpha, beta, gamma) unitary and S' Hermitian within the profile tolerances"""
    tolerances = profile.tolerances
    failures = 0
    for angles in _random_angles(rng, 100):
        d = rotations.wigner_d(angles)
        failures += not linalg.is_unitary(d, tolerances.unitary)
        failures += not linalg.is_hermitian(operator.rotated_kcbs(angles), tolerances.hermitian)
    detail = f"{failures} failures (unitary < {tolerances.unitary:g}, hermitian < {tolerances.hermitian:g})"
    return CheckResult(name="operator-properties", passed=failures == 0, detail=detail)


def check_closed_forms(rng: Rng, profile: RunProfile) -> CheckResult:
    """
    Closed-form expectation values against the matrix path <psi|D^dagger S D|psi>
    """
    zero = states.named_state("zero")
    plus = states.named_state("plus")
    minus = states.named_state("minus")
    psi = states.named_state("psi")

    deviation = 0.0
    for angles in _random_angles(rng, 1000):
        s_prime = operator.rotated_kcbs(angles)
        a, b = angles.alpha, angles.beta
        theta, phi = float(rng.uniform(0, math.pi)), float(rng.uniform(0, TWO_PI))
        retrit = states.retrit_to_state(RetritState(theta=theta, phi=phi))

        deviation = max(
            deviation,
            abs(states.expectation(zero, s_prime) - formulas.exp_zero_closed(b)),
            abs(states.expectation(plus, s_prime) - formulas.exp_pm_closed(b)),
            abs(states.expectation(minus, s_prime) - formulas.exp_pm_closed(b)),
            abs(states.expectation(psi, s_prime) - formulas.exp_psi_closed(a, b)),
            abs(states.expectation(retrit, s_prime) - formulas.f_closed(theta, phi, b, a)),
        )
    return _within("closed-form-equivalence", float(deviation), 1e-10)


def check_special_cases(rng: Rng, profile: RunProfile) -> CheckResult:
    thetas, phis = np.meshgrid(np.linspace(0, math.pi, 50), np.linspace(0, TWO_PI, 50), indexing="ij")
    deviations = []
    for case in SpecialCase:
        reduced = formulas.f_special(case, thetas, phis)
        general = formulas.f_closed(thetas, phis, case.beta, case.alpha)
        deviations.append(float(np.max(np.abs(reduced - general))))
    deviation = max(deviations)
    return _within("special-case-formulas", deviation, 1e-12)


def check_zero_window(rng: Rng, profile: RunProfile) -> CheckResult:
    deviation = abs(math.degrees(regions.zero_state_boundary()) - 31.717)
    return _within("zero-state-window", deviation, 1e-3)


def check_minimizer_closed_form(rng: Rng, profile: RunProfile) -> CheckResult:
    """Eigenvalue minimum against the closed-form minimum, and the spectrum floor"""
    deviation = 0.0
    floor_ok = True
    for alpha, beta in rng.uniform(0, TWO_PI, size=(20, 2)):
        value = minimizer.min_over_retrits(float(alpha), float(beta)).value
        deviation = max(deviation, abs(value - minimizer.retrit_minimum_closed(float(alpha), float(beta))))
        floor_ok = floor_ok and value >= operator.KCBS_CENTER - 1e-9

    result = _within("minimizer-closed-form", deviation, 1e-9)
    if not floor_ok:
        return CheckResult(name=result.name, passed=False, detail=f"{result.detail}, minimum below 5 - 4 sqrt5")
    return result


def check_minimizer_search(rng: Rng, profile: RunProfile) -> CheckResult:
    """Eigenvalue minimum against the brute-force sphere search"""
    deviation = max(
        abs(
            minimizer.min_over_retrits(float(alpha), float(beta)).value
            - minimizer.search_retrit_minimum(float(alpha), float(beta))[0]
        )
        for alpha, beta in rng.uniform(0, TWO_PI, size=(3, 2))
    )
    return _within("minimizer-grid-search", deviation, 1e-6)


def check_table1(rng: Rng, profile: RunProfile) -> CheckResult:
    generated = table.generate_table1()
    max_theta, max_phi = table.compare_table1(generated, table.published_table1())
    anchor = max(
        abs(float(formulas.f_closed(row.theta_min, row.phi_min, row.beta, 0.0)) - operator.KCBS_CENTER)
        for row in generated
    )
    passed = max_theta < 1e-4 and max_phi < 1e-4 and anchor < 1e-8
    detail = f"max |dtheta| {max_theta:.3e}, max |dphi| {max_phi:.3e}, max |f - (5 - 4 sqrt5)| {anchor:.3e}"
    return CheckResult(name="table1-regression", passed=passed, detail=detail)


def check_alpha_restriction(rng: Rng, profile: RunProfile) -> CheckResult:
    betas = [k * table.TABLE_BETA_STEP for k in range(1, 16)]
    report = table.verify_alpha_restriction(betas, n_alpha=profile.alpha_grid_size)
    flagged = ", ".join(f"{math.degrees(beta):.3f}" for beta in report.flagged) or "none"
    return CheckResult(name="alpha-restriction", passed=bool(report), detail=f"flagged beta (deg): {flagged}")


CHECKS: list[Callable[[Rng, RunProfile], CheckResult]] = [
    check_rot_z_series,
    check_wigner_factorization,
    check_kcbs_reconstruction,
    check_spin_commutators,
    check_z_invariance,
    check_spectrum_invariance,
    check_operator_properties,
    check_closed_forms,
    check_special_cases,
    check_zero_window,
    check_minimizer_closed_form,
    check_minimizer_search,
    check_table1,
    check_alpha_restriction,
]


def run_checks(profile: RunProfile, seed: int = VERIFY_SEED) -> list[CheckResult]:
    """
    Runs every check in order with a shared seeded generator
    A check that raises is reported as a failure instead of aborting the suite
    """
    rng = np.random.default_rng(seed)
    results = []
    for check in CHECKS:
        try:
            result = check(rng, profile)
        except Exception as e:
            name = check.__name__.removeprefix("check_").replace("_", "-")
            result = CheckResult(name=name, passed=False, detail=f"raised {type(e).__name__}: {e}")
        logger.debug(result.format_line())
        results.append(result)

    failures = sum(not result.passed for result in results)
    logger.info(f"Verification finished: {len(results) - failures}/{len(results)} checks passed")
    return results
