import math

import pytest

from kcbs_lab.common.errors import DegenerateDesignMatrix
from kcbs_lab.maxviol import fitting, table
from kcbs_lab.maxviol.types import FitModel, Table1Row


@pytest.fixture(scope="module")
def rows() -> list[Table1Row]:
    return table.generate_table1()


def build_rows(phi_model, theta_model, n_rows: int = 33) -> list[Table1Row]:
    """Builds synthetic rows at beta = k pi / 16 from exact models"""
    betas = [k * math.pi / 16 for k in range(n_rows)]
    return [Table1Row(beta=beta, theta_min=theta_model(beta), phi_min=phi_model(beta)) for beta in betas]


class TestPhiFit:
    def test_corrected_fit_on_table(self, rows: list[Table1Row]):
        """
        Tests the corrected phi trendline 4.712 - beta + 0.169 sin(2 beta)
        """
        fit = fitting.fit_phi_model(rows, corrected=True)
        assert fit.model_id == FitModel.PHI_CORRECTED
        assert fit.n_points == 33
        assert fit.coefficients["c0"] == pytest.approx(4.712, abs=0.02)
        assert fit.coefficients["c1"] == pytest.approx(-1.000, abs=0.02)
        assert fit.coefficients["c2"] == pytest.approx(0.169, abs=0.03)

    def test_correction_improves_fit(self, rows: list[Table1Row]):
        """
        Tests that the sin(2 beta) correction lowers the residual
        """
        linear = fitting.fit_phi_model(rows, corrected=False)
        corrected = fitting.fit_phi_model(rows, corrected=True)
        assert linear.model_id == FitModel.PHI_LINEAR
        assert set(linear.coefficients) == {"c0", "c1"}
        assert linear.residual_rms > corrected.residual_rms >= 0

    def test_exact_model_recovery(self):
        """
        Tests recovering the coefficients of exact linear data
        """
        synthetic = build_rows(lambda b: 4.71239 - b, lambda b: 1.0)

        linear = fitting.fit_phi_model(synthetic, corrected=False)
        assert linear.coefficients["c0"] == pytest.approx(4.71239, abs=1e-10)
        assert linear.coefficients["c1"] == pytest.approx(-1.0, abs=1e-10)
        assert linear.residual_rms < 1e-10

        corrected = fitting.fit_phi_model(synthetic, corrected=True)
        assert corrected.coefficients["c2"] == pytest.approx(0.0, abs=1e-10)

    def test_fit_window(self, rows: list[Table1Row]):
        """
        Tests restricting the fit to a beta sub-range
        """
        fit = fitting.fit_phi_model(rows, corrected=True, beta_min=0.0, beta_max=math.pi + 1e-9)
        assert fit.n_points == 17
        assert fit.coefficients["c1"] == pytest.approx(-1.0, abs=0.05)

    def test_deterministic(self, rows: list[Table1Row]):
        """
        Tests that refitting the same rows gives bitwise identical results
        """
        assert fitting.fit_phi_model(rows, corrected=True) == fitting.fit_phi_model(rows, corrected=True)

    def test_degenerate_design(self):
        """
        Tests that too few rows or repeated betas raise DegenerateDesignMatrix
        """
        synthetic = build_rows(lambda b: -b, lambda b: 1.0)
        with pytest.raises(DegenerateDesignMatrix):
            fitting.fit_phi_model(synthetic[:2], corrected=True)

        repeated = [Table1Row(beta=0.5, theta_min=1.0, phi_min=float(i)) for i in range(4)]
        with pytest.raises(DegenerateDesignMatrix):
            fitting.fit_phi_model(repeated, corrected=True)


class TestThetaFit:
    def test_fit_on_table(self, rows: list[Table1Row]):
        """
        Tests the theta trendline 1.571 - 0.77 sin(beta)
        """
        fit = fitting.fit_theta_model(rows)
        assert fit.model_id == FitModel.THETA_SINE
        assert fit.coefficients["d0"] == pytest.approx(1.571, abs=0.03)
        assert fit.coefficients["d1"] == pytest.approx(-0.77, abs=0.05)

    def test_model_is_approximate(self, rows: list[Table1Row]):
        """
        Tests that the trendline misses theta = pi/4 at beta = pi/2
        """
        fit = fitting.fit_theta_model(rows)
        predicted = fitting.evaluate_fit(fit, math.pi / 2)
        assert predicted == pytest.approx(fit.coefficients["d0"] + fit.coefficients["d1"])
        assert abs(predicted - math.pi / 4) > 1e-3
        assert fit.residual_rms > 0

    def test_exact_model_recovery(self):
        """
        Tests recovering the coefficients of exact sine data
        """
        synthetic = build_rows(lambda b: 0.0, lambda b: 1.57 - 0.77 * math.sin(b))
        fit = fitting.fit_theta_model(synthetic)
        assert fit.coefficients["d0"] == pytest.approx(1.57, abs=1e-10)
        assert fit.coefficients["d1"] == pytest.approx(-0.77, abs=1e-10)

    def test_degenerate_design(self):
        """
        Tests that a single row or a constant sin(beta) raises DegenerateDesignMatrix
        """
        with pytest.raises(DegenerateDesignMatrix):
            fitting.fit_theta_model([Table1Row(beta=0.5, theta_min=1.0, phi_min=0.0)])

        repeated = [Table1Row(beta=0.5, theta_min=1.0 + i, phi_min=0.0) for i in range(3)]
        with pytest.raises(DegenerateDesignMatrix):
            fitting.fit_theta_model(repeated)


class TestEvaluateFit:
    def test_corrected_model(self, rows: list[Table1Row]):
        """
        Tests evaluating the corrected phi trendline
        """
        fit = fitting.fit_phi_model(rows, corrected=True)
        c = fit.coefficients
        beta = 0.7
        expected = c["c0"] + c["c1"] * beta + c["c2"] * math.sin(2 * beta)
        assert fitting.evaluate_fit(fit, beta) == pytest.approx(expected, abs=1e-12)
