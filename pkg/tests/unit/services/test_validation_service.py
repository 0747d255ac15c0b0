"""
Unit tests for ValidationService (the acceptance suite)
"""

import pytest

from app.models.dephasing import DephasingSample, DephasingTable
from app.models.validation import CheckResult
from app.services.rates_service import RatesService
from app.services.validation_service import ValidationService

EXPECTED_NAMES = [
    "r_max_reproduction",
    "exact_optimality",
    "half_efficiency",
    "purcell_identities",
    "vacuum_rabi",
    "adiabatic_elimination",
    "conservation",
    "trend_suite",
    "geometry_scalings",
    "rate_equation_oracle",
]


@pytest.fixture
def service(settings):
    return ValidationService(settings)


class TestCheckResult:
    """Test suite for the CHECK line format."""

    def test_pass_line(self):
        assert CheckResult(name="vacuum_rabi", passed=True, detail="ok").line() == "CHECK vacuum_rabi PASS ok"

    def test_fail_line_without_detail(self):
        assert CheckResult(name="trend_suite", passed=False).line().startswith("CHECK trend_suite FAIL")


class TestClosedFormChecks:
    """Test suite for the checks that need no integration."""

    def test_reference_device(self, service):
        params = service.reference_params(delta_over_g=10.0)
        assert params.kappa == 250.0
        assert params.gamma_star == pytest.approx(220.0)
        assert params.delta == 500.0

    @pytest.mark.parametrize(
        "check",
        [
            "check_r_max",
            "check_exact_optimality",
            "check_half_efficiency",
            "check_purcell_identities",
            "check_trends",
            "check_geometry_scalings",
            "check_rate_equation_oracle",
        ],
    )
    def test_check_passes(self, service, check):
        # Act
        result = getattr(service, check)()

        # Assert
        assert result.passed, result.line()

    def test_r_max_detail(self, service):
        assert "R=3.8548" in service.check_r_max().detail


@pytest.mark.slow
class TestMasterEquationChecks:
    """Test suite for the checks that integrate the master equation."""

    def test_vacuum_rabi(self, service):
        assert service.check_vacuum_rabi().passed

    def test_adiabatic_elimination(self, service):
        assert service.check_adiabatic_elimination().passed

    def test_conservation(self, service):
        assert service.check_conservation().passed

    def test_run_all(self, service):
        results = service.run_all()

        assert [r.name for r in results] == EXPECTED_NAMES
        assert all(r.passed for r in results), [r.line() for r in results if not r.passed]

    def test_perturbed_rate_is_caught(self, service, mocker):
        """A 1% error in R breaks the closed-form identities but stays inside the 10% bridge."""
        exact = RatesService.effective_rate
        mocker.patch.object(
            RatesService,
            "effective_rate",
            lambda self, params: 1.01 * exact(self, params),
        )

        assert not service.check_purcell_identities().passed
        assert service.check_adiabatic_elimination().passed


class TestRunAll:
    """Test suite for error isolation in run_all."""

    def test_raising_check_is_reported_as_failure(self, service, mocker):
        def check_broken():
            raise ValueError("boom")

        mocker.patch.object(
            service, "checks", return_value=[service.check_half_efficiency, check_broken]
        )

        # Act
        results = service.run_all()

        # Assert
        assert results[0].passed
        assert results[1].name == "broken"
        assert results[1].passed is False
        assert results[1].detail == "error: boom"

    def test_table_below_reference_temperature(self, settings, mocker):
        """A table ending before 100 K fails the checks that need it instead of crashing."""
        short = DephasingTable(samples=(
            DephasingSample(T=10.0, gamma_star=0.01),
            DephasingSample(T=80.0, gamma_star=0.1),
        ))
        service = ValidationService(settings, table=short)
        mocker.patch.object(
            service, "checks", return_value=[service.check_r_max, service.check_geometry_scalings]
        )

        # Act
        results = service.run_all()

        # Assert
        assert results[0].passed is False
        assert results[0].detail.startswith("error: ")
        assert "100" in results[0].detail
        assert results[1].passed
