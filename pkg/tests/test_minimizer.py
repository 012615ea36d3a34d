import math

import numpy as np
import pytest
from conftest import S0, S1

from kcbs_lab.analysis import formulas, minimizer
from kcbs_lab.core import linalg
from kcbs_lab.kcbs.operator import rotated_kcbs
from kcbs_lab.spin.types import EulerAngles


class TestSignConventions:
    @pytest.mark.parametrize(
        "vector, expected",
        [
            ([0.0, -1.0, 0.0], [0.0, 1.0, 0.0]),
            ([0.6, 0.8, 0.0], [0.6, 0.8, 0.0]),
            ([0.0, 0.0, -1.0], [0.0, 0.0, 1.0]),
            ([-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]),
            ([0.6, -1e-14, -0.8], [-0.6, 0.0, 0.8]),
        ],
    )
    def test_standalone_sign(self, vector: list[float], expected: list[float]):
        """
        Tests that the sign rule prefers v_y > 0, then v_z > 0, then v_x > 0
        """
        assert np.allclose(minimizer.standalone_sign(np.array(vector)), expected)

    def test_vector_to_retrit(self):
        """
        Tests converting unit vectors into (theta, phi) with phi in [0, 2pi)
        """
        north = minimizer.vector_to_retrit(np.array([0.0, 0.0, 1.0]))
        assert (north.theta, north.phi) == (0.0, 0.0)

        down_y = minimizer.vector_to_retrit(np.array([0.0, -1.0, 0.0]))
        assert down_y.theta == pytest.approx(math.pi / 2)
        assert down_y.phi == pytest.approx(3 * math.pi / 2)

        # Slightly non-unit z components are clipped instead of failing in acos
        south = minimizer.vector_to_retrit(np.array([0.0, 0.0, -1.0000000000000002]))
        assert south.theta == pytest.approx(math.pi)


class TestMinOverRetrits:
    def test_no_rotation(self):
        """
        Tests that without rotation the minimum is 5 - 4 sqrt5 at |0>, i.e. theta = phi = 90 deg
        """
        minimum = minimizer.min_over_retrits(0.0, 0.0)
        assert minimum.value == pytest.approx(S0, abs=1e-12)
        assert minimum.argmin.theta == pytest.approx(math.pi / 2)
        assert minimum.argmin.phi == pytest.approx(math.pi / 2)
        assert not minimum.degenerate

    def test_spectrum_floor(self, rng: np.random.Generator):
        """
        Tests that no rotation pushes the real minimum below 5 - 4 sqrt5
        """
        for alpha, beta in rng.uniform(0, 2 * math.pi, size=(200, 2)):
            assert minimizer.min_over_retrits(float(alpha), float(beta)).value >= S0 - 1e-9

    def test_matches_closed_form(self, rng: np.random.Generator):
        """
        Tests the eigenvalue minimum against the closed-form minimum
        """
        for alpha, beta in rng.uniform(0, 2 * math.pi, size=(100, 2)):
            minimum = minimizer.min_over_retrits(float(alpha), float(beta))
            assert minimum.value == pytest.approx(minimizer.retrit_minimum_closed(float(alpha), float(beta)), abs=1e-9)

    def test_argmin_attains_minimum(self, rng: np.random.Generator):
        """
        Tests that the returned retrit reproduces the minimum through the closed form
        """
        for alpha, beta in rng.uniform(0, 2 * math.pi, size=(50, 2)):
            minimum = minimizer.min_over_retrits(float(alpha), float(beta))
            value = formulas.f_closed(minimum.argmin.theta, minimum.argmin.phi, float(beta), float(alpha))
            assert value == pytest.approx(minimum.value, abs=1e-9)

    def test_matches_grid_search(self, rng: np.random.Generator):
        """
        Tests the eigenvalue minimum against the brute-force sphere search
        """
        for alpha, beta in rng.uniform(0, 2 * math.pi, size=(20, 2)):
            exact = minimizer.min_over_retrits(float(alpha), float(beta)).value
            searched, _ = minimizer.search_retrit_minimum(float(alpha), float(beta), n_theta=181, n_phi=361)
            assert searched == pytest.approx(exact, abs=1e-6)
            assert searched >= exact - 1e-9

    def test_grid_search_argmin(self):
        """
        Tests that the default-resolution search finds a minimizer on the canonical chart
        """
        value, retrit = minimizer.search_retrit_minimum(0.3, 1.1)
        assert value == pytest.approx(minimizer.min_over_retrits(0.3, 1.1).value, abs=1e-6)
        assert 0 <= retrit.theta <= math.pi
        assert 0 <= retrit.phi < 2 * math.pi

    def test_degenerate_minimum_follows_hint(self):
        """
        Tests that a degenerate minimum returns the eigenspace vector closest to the hint
        """
        alpha, beta = math.pi / 2, math.pi / 4
        minimum = minimizer.min_over_retrits(alpha, beta)
        assert minimum.degenerate
        assert minimum.value == pytest.approx(-math.sqrt(5), abs=1e-10)

        # The opposite hint flips the sign
        flipped = minimizer.min_over_retrits(alpha, beta, hint=-minimum.vector)
        assert np.allclose(flipped.vector, -minimum.vector, atol=1e-10)

        # Any hint lands inside the two dimensional eigenspace
        real_part = linalg.real_part_sym(rotated_kcbs(EulerAngles(alpha=alpha, beta=beta))).to_array()
        hinted = minimizer.min_over_retrits(alpha, beta, hint=np.array([0.0, 0.0, 1.0]))
        assert np.allclose(real_part @ hinted.vector, hinted.value * hinted.vector, atol=1e-10)
        assert hinted.vector[2] >= 0


class TestClosedFormMinimum:
    @pytest.mark.parametrize(
        "alpha, beta, expected",
        [
            (0.0, 0.0, S0),
            (0.0, 1.3, S0),
            (math.pi / 2, math.pi / 2, S0),
            (math.pi / 2, math.pi / 4, -math.sqrt(5)),
        ],
    )
    def test_values(self, alpha: float, beta: float, expected: float):
        """
        Tests the closed-form minimum at special rotations
        """
        assert minimizer.retrit_minimum_closed(alpha, beta) == pytest.approx(expected, abs=1e-12)

    def test_between_bounds(self, rng: np.random.Generator):
        """
        Tests that the minimum always lies between 5 - 4 sqrt5 and -sqrt5
        """
        for alpha, beta in rng.uniform(0, 2 * math.pi, size=(100, 2)):
            value = minimizer.retrit_minimum_closed(float(alpha), float(beta))
            assert S0 - 1e-12 <= value <= -math.sqrt(5) + 1e-12
            assert value < S1
