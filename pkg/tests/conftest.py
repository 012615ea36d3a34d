import math

import numpy as np
import pytest
from dotenv import dotenv_values

from kcbs_lab.common.env import DOT_ENV_PATH
from kcbs_lab.config.profiles import RunProfile
from kcbs_lab.spin.types import EulerAngles

TWO_PI = 2 * math.pi

# Eigenvalues of the KCBS operator: s1 on |1>, |-1> and s0 on |0>
S1 = -5 + 2 * math.sqrt(5)
S0 = 5 - 4 * math.sqrt(5)


@pytest.fixture(autouse=True)
def clear_prod_env(monkeypatch: pytest.MonkeyPatch):
    """Clears any enironment variables set in .env so environment is consistent across users"""
    if DOT_ENV_PATH.exists():
        prod_env = dotenv_values(DOT_ENV_PATH)
        for key in prod_env:
            monkeypatch.delenv(key, raising=False)


@pytest.fixture(scope="function")
def rng() -> np.random.Generator:
    """Seeded generator so random sampling is the same on every run"""
    return np.random.default_rng(1234)


@pytest.fixture(scope="function")
def default_profile() -> RunProfile:
    return RunProfile()


def build_random_angles(rng: np.random.Generator, count: int, with_gamma: bool = True) -> list[EulerAngles]:
    """Builds random Euler angles over [0, 2pi)"""
    angles = rng.uniform(0, TWO_PI, size=(count, 3))
    return [EulerAngles(alpha=float(a), beta=float(b), gamma=float(g) if with_gamma else 0.0) for a, b, g in angles]


def build_random_retrits(rng: np.random.Generator, count: int) -> list[tuple[float, float]]:
    """Builds random (theta, phi) pairs"""
    return [(float(rng.uniform(0, math.pi)), float(rng.uniform(0, TWO_PI))) for _ in range(count)]
