import functools
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import click
import yaml

from kcbs_lab import main
from kcbs_lab.common.errors import KcbsError
from kcbs_lab.config.profiles import RunProfile, get_run_profile
from kcbs_lab.output.writers import OutputFormat, Record, emit
from kcbs_lab.spin.types import EulerAngles

STATE_CHOICES = ["zero", "plus", "minus", "psi", "retrit", "qutrit"]


@dataclass
class CliConfig:
    # Angles are parsed and printed in degrees instead of radians
    degrees: bool
    output_format: OutputFormat
    # Output file (stdout when None)
    output_path: Path | None
    profile: RunProfile

    def angle(self, value: float) -> float:
        """Converts a command line angle to radians"""
        return math.radians(value) if self.degrees else value

    def optional_angle(self, value: float | None) -> float | None:
        return None if value is None else self.angle(value)

    def emit(self, subcommand: str, parameters: Record, records: list[Record]):
        buffer = io.StringIO()
        emit(subcommand, parameters, records, self.output_format, buffer, output_path=self.output_path)
        if self.output_path is None:
            click.echo(buffer.getvalue(), nl=False)


def common_options(command: Callable[..., Any]) -> Callable[..., Any]:
    """
    Adds the shared unit, format, output and profile options to a subcommand
    and hands the resolved CliConfig to it
    """

    @click.option("--degrees", is_flag=True, default=False, help="Read and print angles in degrees")
    @click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=OutputFormat.CSV.value,
        show_default=True,
        help="Output format",
    )
    @click.option("--output", "output_path", type=click.Path(dir_okay=False, path_type=Path), help="Output file")
    @click.option("--profile", "profile_name", default=None, help="Run profile name (defaults to KCBS_PROFILE)")
    @functools.wraps(command)
    def wrapper(degrees: bool, output_format: str, output_path: Path | None, profile_name: str | None, **kwargs):
        try:
            profile = get_run_profile(profile_name)
        except (FileNotFoundError, TypeError, ValueError, yaml.YAMLError) as e:
            raise click.BadParameter(str(e), param_hint="--profile")

        config = CliConfig(
            degrees=degrees,
            output_format=OutputFormat(output_format),
            output_path=output_path,
            profile=profile,
        )
        try:
            return command(config, **kwargs)
        except (KcbsError, ValueError) as e:
            raise click.UsageError(str(e))

    return wrapper


def _resolution(value: int) -> int:
    if value < 2:
        raise click.BadParameter(f"Resolution must be at least 2, got {value}")
    return value


@click.group()
def cli():
    """KCBS contextuality toolkit for spin-1 systems"""
    pass


@cli.command("verify")
@common_options
def verify(config: CliConfig):
    """Runs the operator identity and regression suite

    Prints one PASS/FAIL line per check and exits with 1 if any check fails
    """
    results = main.run_verification(config.profile)
    for result in results:
        click.echo(result.format_line())

    if not all(result.passed for result in results):
        click.get_current_context().exit(1)


@cli.command("expect")
@click.option("--state", "state_name", type=click.Choice(STATE_CHOICES), required=True, help="State to evaluate")
@click.option("--theta", type=float, default=None, help="Retrit polar angle")
@click.option("--phi", type=float, default=None, help="Retrit azimuthal angle")
@click.option("--amplitudes", default=None, help="Comma separated qutrit amplitudes, e.g. '1,0,1j'")
@click.option("--alpha", type=float, default=0.0, show_default=True)
@click.option("--beta", type=float, default=0.0, show_default=True)
@click.option("--gamma", type=float, default=0.0, show_default=True)
@common_options
def expect(
    config: CliConfig,
    state_name: str,
    theta: float | None,
    phi: float | None,
    amplitudes: str | None,
    alpha: float,
    beta: float,
    gamma: float,
):
    """Prints <psi|S'|psi> for a state and rotation, with its contextual flag"""
    parsed_amplitudes = None
    if amplitudes is not None:
        try:
            parsed_amplitudes = [complex(part.strip()) for part in amplitudes.split(",")]
        except ValueError:
            raise click.BadParameter(f"Could not parse amplitudes '{amplitudes}'", param_hint="--amplitudes")

    state = main.build_state(
        state_name,
        theta=config.optional_angle(theta),
        phi=config.optional_angle(phi),
        amplitudes=parsed_amplitudes,
    )
    angles = EulerAngles(alpha=config.angle(alpha), beta=config.angle(beta), gamma=config.angle(gamma))
    records = main.evaluate_expectation(state_name, state, angles, degrees=config.degrees)
    config.emit("expect", {"state": state_name, "alpha": alpha, "beta": beta, "gamma": gamma}, records)


@cli.command("curve")
@click.argument("curve", type=click.Choice(["zero", "pm", "psi"]))
@click.option("--samples", type=int, default=None, help="Samples per angle (defaults to the run profile)")
@common_options
def curve(config: CliConfig, curve: str, samples: int | None):
    """Samples a closed-form expectation curve over one period"""
    n_samples = _resolution(config.profile.curve_samples if samples is None else samples)
    records = main.sample_curve(curve, n_samples, degrees=config.degrees)
    config.emit("curve", {"curve": curve, "samples": n_samples}, records)


@cli.command("scan-sphere")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--n-theta", type=int, default=None, help="Polar resolution (defaults to the run profile)")
@click.option("--n-phi", type=int, default=None, help="Azimuthal resolution (defaults to the run profile)")
@common_options
def scan_sphere(config: CliConfig, alpha: float, beta: float, n_theta: int | None, n_phi: int | None):
    """Classifies a grid of retrits for a fixed rotation"""
    n_theta = _resolution(config.profile.n_theta if n_theta is None else n_theta)
    n_phi = _resolution(config.profile.n_phi if n_phi is None else n_phi)
    records = main.scan_sphere(
        config.angle(alpha), config.angle(beta), n_theta=n_theta, n_phi=n_phi, degrees=config.degrees
    )
    parameters = {"alpha": alpha, "beta": beta, "n_theta": n_theta, "n_phi": n_phi}
    config.emit("scan-sphere", parameters, records)


@cli.command("windows")
@click.argument("kind", type=click.Choice(["zero", "psi", "retrit"]))
@click.option("--alpha", type=float, default=None, help="Rotation about Z (required for retrit)")
@click.option("--split", is_flag=True, default=False, help="Split windows through beta = 0 into [0, 2pi)")
@common_options
def windows(config: CliConfig, kind: str, alpha: float | None, split: bool):
    """Emits contextual or no-violation angle windows"""
    if kind == "retrit" and alpha is None:
        raise click.BadParameter("--alpha is required for retrit windows", param_hint="--alpha")

    records = main.find_windows(
        kind, config.optional_angle(alpha), config.profile, degrees=config.degrees, split=split
    )
    config.emit("windows", {"kind": kind, "alpha": alpha, "split": split}, records)


@cli.command("table1")
@click.option("--mirrored", is_flag=True, default=False, help="Generate the antipodal branch")
@click.option("--compare", is_flag=True, default=False, help="Add the printed values and deltas as columns")
@common_options
def table1(config: CliConfig, mirrored: bool, compare: bool):
    """Emits the maximally contextual retrits for beta = k pi/16 at alpha = 0"""
    mirrored = mirrored or config.profile.mirrored_table
    records = main.build_table1(mirrored=mirrored, compare=compare, degrees=config.degrees)
    config.emit("table1", {"mirrored": mirrored, "compare": compare}, records)


@cli.command("fit")
@click.argument("model", type=click.Choice(list(main.FIT_MODELS)))
@click.option("--beta-min", type=float, default=None, help="Lower end of the fit window")
@click.option("--beta-max", type=float, default=None, help="Upper end of the fit window")
@common_options
def fit(config: CliConfig, model: str, beta_min: float | None, beta_max: float | None):
    """Least squares trendline on the generated table"""
    lo = config.angle(beta_min) if beta_min is not None else config.profile.fit_beta_min
    hi = config.angle(beta_max) if beta_max is not None else config.profile.fit_beta_max
    records = main.run_fit(model, lo, hi, mirrored=config.profile.mirrored_table)
    config.emit("fit", {"model": model, "beta_min": beta_min, "beta_max": beta_max}, records)


@cli.command("minimize")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@common_options
def minimize(config: CliConfig, alpha: float, beta: float):
    """Minimal expectation over real qutrits and its minimizing retrit"""
    records = main.minimize(config.angle(alpha), config.angle(beta), degrees=config.degrees)
    config.emit("minimize", {"alpha": alpha, "beta": beta}, records)


def run(argv: list[str] | None = None) -> int:
    """
    Runs a single subcommand and returns its exit code:
    0 on success, 1 when verification fails, 2 on usage errors
    """
    args = list(sys.argv[1:] if argv is None else argv)
    if not args:
        click.echo(cli.get_usage(click.Context(cli, info_name="kcbs")), err=True)
        return 2

    try:
        result = cli.main(args=args, prog_name="kcbs", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1

    return result if isinstance(result, int) else 0
