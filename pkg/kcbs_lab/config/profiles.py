from dataclasses import dataclass, field
from pathlib import Path

import yaml

from kcbs_lab.common import env
from kcbs_lab.common.env import EnvironmentVariables as envs
from kcbs_lab.common.env import get_env

BASE_RUN_CONFIG = "profile-base.yaml"
DEFAULT_RUN_PROFILE = "run-profile.yaml"

PROFILE_CONFIG_HELP = """
By default, run profiles are stored under `~/.kcbs`;
however, it can be overridden with the `KCBS_HOME_DIRECTORY` environment variable

Store settings shared by every run in `profile-base.yaml`, and overrides either in
`run-profile.yaml` or in {profile_name}.yaml (selected with `--profile` or `KCBS_PROFILE`)
"""


def _load_mapping(path: Path) -> dict:
    """
    Reads a yaml profile file, treating a missing or empty file as no settings

    Raises ValueError if the document is not a mapping (yaml.YAMLError propagates for invalid yaml)
    """
    if not path.exists():
        return {}

    with open(path, "r") as f:
        data = yaml.safe_load(f)

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"Run profile {path} must be a yaml mapping of settings, got {type(data).__name__}")
    return data


@dataclass
class Tolerances:
    # Bisection tolerance for window edges, in radians
    bisection_xtol: float = 1e-4
    # Tolerance for the hermiticity check on operators
    hermitian: float = 1e-10
    # Tolerance for the unitarity check on rotations
    unitary: float = 1e-8


@dataclass
class RunProfile:
    """
    Default resolutions and tolerances for the CLI subcommands
    Every field can be overridden by the matching command line option
    """

    # Sphere scan resolution (theta inclusive over [0, pi], phi half-open over [0, 2pi))
    n_theta: int = 91
    n_phi: int = 180
    # Number of samples per axis for the closed-form curves
    curve_samples: int = 360
    # Sweep step for no-violation windows, in degrees (at most 0.1)
    beta_step_deg: float = 0.1
    # Number of alpha points for the alpha restriction check
    alpha_grid_size: int = 720
    # Optional beta sub-range for the trendline fits, in radians
    fit_beta_min: float | None = None
    fit_beta_max: float | None = None
    # Generate the antipodal branch of the maximal violation table
    mirrored_table: bool = False
    tolerances: Tolerances = field(default_factory=Tolerances)

    @staticmethod
    def _get_base_config_path() -> Path:
        """Gets the full path to the shared run config"""
        return env.KCBS_HOME_DIRECTORY.joinpath(BASE_RUN_CONFIG)

    @staticmethod
    def _get_profile_path(profile_name: str | None) -> Path:
        """Get the full path to a named yaml profile"""
        profile_file = f"{profile_name}.yaml" if profile_name else DEFAULT_RUN_PROFILE
        return env.KCBS_HOME_DIRECTORY.joinpath(profile_file)

    @classmethod
    def from_yaml(cls, profile_name: str | None) -> "RunProfile":
        """
        Load a run profile from profile-base.yaml, overridden by run-profile.yaml or {profile_name}.yaml

        Missing files fall back to the defaults, except for an explicitly named profile
        """
        base_config_path = RunProfile._get_base_config_path()
        profile_path = RunProfile._get_profile_path(profile_name)

        if profile_name and not profile_path.exists():
            raise FileNotFoundError(f"Run profile not found for '{profile_name}'.\n{PROFILE_CONFIG_HELP}")

        base_data = _load_mapping(base_config_path)
        profile_data = _load_mapping(profile_path)

        tolerances: dict = {}
        for data in (base_data, profile_data):
            section = data.pop("tolerances", None) or {}
            if not isinstance(section, dict):
                raise ValueError(f"Run profile 'tolerances' must be a mapping, got {type(section).__name__}")
            tolerances |= section

        return cls(**base_data | profile_data, tolerances=Tolerances(**tolerances))


def get_run_profile(profile_name: str | None = None) -> RunProfile:
    """
    Retrieves the run profile, falling back to the KCBS_PROFILE environment variable
    """
    return RunProfile.from_yaml(profile_name or get_env(envs.KCBS_PROFILE))
