import math

from kcbs_lab import verification
from kcbs_lab.analysis import minimizer, regions, states
from kcbs_lab.analysis.formulas import classify
from kcbs_lab.analysis.types import AngleWindow, QutritState, RetritState
from kcbs_lab.common.logger import logger
from kcbs_lab.config.profiles import RunProfile
from kcbs_lab.kcbs.operator import kcbs_operator, rotate
from kcbs_lab.maxviol import fitting, table
from kcbs_lab.maxviol.types import FitModel
from kcbs_lab.output.writers import Record
from kcbs_lab.spin.types import EulerAngles

# CLI names for the fit models
FIT_MODELS = {
    "phi": FitModel.PHI_LINEAR,
    "phi-corrected": FitModel.PHI_CORRECTED,
    "theta": FitModel.THETA_SINE,
}


def _angle(value: float, degrees: bool) -> float:
    """Converts an internal angle (radians) for output"""
    return math.degrees(value) if degrees else value


def _window_records(axis: str, windows: list[AngleWindow], degrees: bool) -> list[Record]:
    return [
        {
            "axis": axis,
            "lo": _angle(window.lo, degrees),
            "hi": _angle(window.hi, degrees),
            "kind": window.kind,
        }
        for window in windows
    ]


def run_verification(profile: RunProfile) -> list[verification.CheckResult]:
    """Runs the verification suite"""
    return verification.run_checks(profile)


def build_state(
    name: str,
    theta: float | None = None,
    phi: float | None = None,
    amplitudes: list[complex] | None = None,
) -> QutritState:
    """
    Resolves the state selected on the command line
    Named states need no parameters, `retrit` needs theta and phi, and `qutrit` needs three amplitudes
    """
    if name == "retrit":
        if theta is None or phi is None:
            raise ValueError("A retrit state requires both theta and phi")
        return states.retrit_to_state(RetritState(theta=theta, phi=phi))

    if name == "qutrit":
        if not amplitudes or len(amplitudes) != 3:
            raise ValueError("A qutrit state requires exactly three amplitudes")
        return states.qutrit_state(amplitudes)

    return states.named_state(name)


def evaluate_expectation(state_name: str, state: QutritState, angles: EulerAngles, degrees: bool) -> list[Record]:
    """<psi|S'(alpha, beta, gamma)|psi> and its classification"""
    rotated = rotate(kcbs_operator(), angles).measured
    value = states.expectation(state, rotated)
    return [
        {
            "state": state_name,
            "alpha": _angle(angles.alpha, degrees),
            "beta": _angle(angles.beta, degrees),
            "gamma": _angle(angles.gamma, degrees),
            "value": value,
            "contextual": bool(classify(value)),
        }
    ]


def sample_curve(curve: str, n_samples: int, degrees: bool) -> list[Record]:
    samples = regions.sample_curve(curve, n_samples)
    if curve == "psi":
        return [
            {
                "alpha": _angle(sample.alpha, degrees),
                "beta": _angle(sample.beta, degrees),
                "value": sample.value,
                "contextual": sample.contextual,
            }
            for sample in samples
        ]
    return [
        {"beta": _angle(sample.beta, degrees), "value": sample.value, "contextual": sample.contextual}
        for sample in samples
    ]


def scan_sphere(alpha: float, beta: float, n_theta: int, n_phi: int, degrees: bool) -> list[Record]:
    """Region map of the retrit sphere for a single rotation"""
    samples = regions.scan_sphere(alpha, beta, n_theta=n_theta, n_phi=n_phi)
    logger.info(f"Contextual fraction of the sphere scan: {regions.contextual_fraction(samples):.4f}")
    return [
        {
            "theta": _angle(sample.theta, degrees),
            "phi": _angle(sample.phi, degrees),
            "value": sample.value,
            "contextual": sample.contextual,
        }
        for sample in samples
    ]


def find_windows(
    kind: str, alpha: float | None, profile: RunProfile, degrees: bool, split: bool = False
) -> list[Record]:
    """
    Angle windows for the |0> state, the superposition state, or the best retrit at a fixed alpha

    Windows through beta = 0 carry a negative lower bound unless `split` rewrites them onto [0, 2pi)
    """
    if kind == "zero":
        windows = regions.zero_state_windows()
        return _window_records("beta", regions.split_at_zero(windows) if split else windows, degrees)

    if kind == "psi":
        psi = regions.psi_windows()
        return _window_records("beta", psi.beta, degrees) + _window_records("alpha", psi.alpha, degrees)

    if alpha is None:
        raise ValueError("Retrit windows require an alpha value")
    windows = regions.no_violation_windows(
        alpha,
        beta_step=math.radians(profile.beta_step_deg),
        xtol=profile.tolerances.bisection_xtol,
    )
    return _window_records("beta", regions.split_at_zero(windows) if split else windows, degrees)


def build_table1(mirrored: bool, compare: bool, degrees: bool) -> list[Record]:
    """
    The 33 maximal violation rows, optionally alongside the printed values

    theta and phi are always emitted in radians so that they read like the printed
    table; only beta follows the unit flag
    """
    rows = table.generate_table1(mirrored=mirrored)
    records: list[Record] = [
        {
            "k": k,
            "beta": _angle(row.beta, degrees),
            "theta_min": row.theta_min,
            "phi_min": row.phi_min,
            "value": row.value,
        }
        for k, row in enumerate(rows)
    ]

    if compare:
        for record, published in zip(records, table.published_table1()):
            record["theta_published"] = published.theta_min
            record["phi_published"] = published.phi_min
            record["theta_delta"] = record["theta_min"] - published.theta_min
            record["phi_delta"] = record["phi_min"] - published.phi_min

    return records


def run_fit(
    model_name: str,
    beta_min: float | None,
    beta_max: float | None,
    mirrored: bool = False,
) -> list[Record]:
    """Fits a trendline model on freshly generated table rows"""
    model = FIT_MODELS[model_name]
    rows = table.generate_table1(mirrored=mirrored)
    fit = fitting.fit_model(model, rows, beta_min=beta_min, beta_max=beta_max)
    return [
        {
            "model": fit.model_id,
            **fit.coefficients,
            "residual_rms": fit.residual_rms,
            "n_points": fit.n_points,
        }
    ]


def minimize(alpha: float, beta: float, degrees: bool) -> list[Record]:
    """Minimal expectation over real qutrits, with the maximally contextual retrit"""
    minimum = minimizer.min_over_retrits(alpha, beta)
    return [
        {
            "alpha": _angle(alpha, degrees),
            "beta": _angle(beta, degrees),
            "value": minimum.value,
            "theta": _angle(minimum.argmin.theta, degrees),
            "phi": _angle(minimum.argmin.phi, degrees),
            "contextual": bool(classify(minimum.value)),
            "degenerate": minimum.degenerate,
        }
    ]
