from pathlib import Path
from unittest.mock import Mock, patch

import pytest
import yaml

from kcbs_lab.common import env
from kcbs_lab.config.profiles import RunProfile, Tolerances, get_run_profile

TEST_PROFILES = "tests/fixtures/profiles"


class TestRunProfile:
    def test_defaults(self):
        """
        Tests the built-in defaults
        """
        profile = RunProfile()
        assert profile.beta_step_deg == 0.1
        assert profile.alpha_grid_size == 720
        assert profile.fit_beta_min is None
        assert profile.tolerances == Tolerances(bisection_xtol=1e-4, hermitian=1e-10, unitary=1e-8)

    def test_profile_paths(self):
        """
        Tests that profiles are looked up under the home directory
        """
        assert RunProfile._get_profile_path("fine") == env.KCBS_HOME_DIRECTORY / "fine.yaml"
        assert RunProfile._get_profile_path(None) == env.KCBS_HOME_DIRECTORY / "run-profile.yaml"
        assert RunProfile._get_base_config_path() == env.KCBS_HOME_DIRECTORY / "profile-base.yaml"


class TestReadRunProfiles:
    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("ignore"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/run_profile.yaml"))
    def test_profile_only(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests parsing a run profile yaml, without the base config
        """
        profile = RunProfile.from_yaml("test")
        assert profile == RunProfile(
            n_theta=181,
            n_phi=360,
            curve_samples=720,
            beta_step_deg=0.05,
            alpha_grid_size=1440,
            fit_beta_min=0.0,
            fit_beta_max=3.2,
            mirrored_table=True,
            tolerances=Tolerances(bisection_xtol=1e-5, hermitian=1e-12, unitary=1e-7),
        )
        mock_profile_path.assert_called_once_with("test")

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path(f"{TEST_PROFILES}/run_profile.yaml"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path("ignore"))
    def test_base_only(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests parsing a base config yaml, without a run profile
        """
        profile = RunProfile.from_yaml(None)
        assert profile.n_theta == 181
        assert profile.mirrored_table
        assert profile.tolerances.bisection_xtol == 1e-5

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path(f"{TEST_PROFILES}/run_profile.yaml"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_overrides.yaml"))
    def test_composition(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that the run profile overrides the base config, including nested tolerances
        """
        profile = RunProfile.from_yaml("test")
        assert profile.n_theta == 37
        assert profile.n_phi == 360
        assert not profile.mirrored_table
        assert profile.tolerances == Tolerances(bisection_xtol=1e-3, hermitian=1e-12, unitary=1e-7)

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path("notspecified"))
    def test_missing_files_use_defaults(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that without any yaml files the defaults are used
        """
        assert RunProfile.from_yaml(None) == RunProfile()

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_empty.yaml"))
    def test_empty_file(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that an empty yaml file is treated as no overrides
        """
        assert RunProfile.from_yaml("empty") == RunProfile()

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path("notspecified"))
    def test_missing_named_profile(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that an explicitly named profile must exist
        """
        with pytest.raises(FileNotFoundError, match="Run profile not found"):
            RunProfile.from_yaml("missing")

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_unknown_key.yaml"))
    def test_unknown_key(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that unknown keys fail loudly
        """
        with pytest.raises(TypeError):
            RunProfile.from_yaml("unknown")


    @pytest.mark.parametrize(
        "fixture, error",
        [
            ("profile_list.yaml", "must be a yaml mapping"),
            ("profile_bad_tolerances.yaml", "'tolerances' must be a mapping"),
        ],
    )
    def test_non_mapping_documents(self, fixture: str, error: str):
        """
        Tests that a profile or tolerances section that is not a mapping is rejected with a clear message
        """
        with patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified")), patch.object(
            RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/{fixture}")
        ):
            with pytest.raises(ValueError, match=error):
                RunProfile.from_yaml("malformed")

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_invalid.yaml"))
    def test_invalid_yaml(self, mock_profile_path: Mock, mock_base_path: Mock):
        """
        Tests that unparsable yaml surfaces as a yaml error
        """
        with pytest.raises(yaml.YAMLError):
            RunProfile.from_yaml("invalid")


class TestGetRunProfile:
    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_overrides.yaml"))
    def test_name_from_environment(
        self, mock_profile_path: Mock, mock_base_path: Mock, monkeypatch: pytest.MonkeyPatch
    ):
        """
        Tests that the profile name falls back to KCBS_PROFILE
        """
        monkeypatch.setenv("KCBS_PROFILE", "fine")
        profile = get_run_profile()
        mock_profile_path.assert_called_once_with("fine")
        assert profile.n_theta == 37

    @patch.object(RunProfile, "_get_base_config_path", return_value=Path("notspecified"))
    @patch.object(RunProfile, "_get_profile_path", return_value=Path(f"{TEST_PROFILES}/profile_overrides.yaml"))
    def test_explicit_name_wins(self, mock_profile_path: Mock, mock_base_path: Mock, monkeypatch: pytest.MonkeyPatch):
        """
        Tests that an explicit name takes precedence over KCBS_PROFILE
        """
        monkeypatch.setenv("KCBS_PROFILE", "fine")
        get_run_profile("coarse")
        mock_profile_path.assert_called_once_with("coarse")
