"""
Unit tests for RatesService
"""

import logging

import numpy as np
import pytest
from scipy.linalg import expm

from app.models.params import SystemParams
from app.services.rates_service import NoInteriorOptimumError, RatesError, RatesService


@pytest.fixture
def service():
    return RatesService()


class TestEffectiveRate:
    """Test suite for R = (4g²/Γ) / (1 + (2δ/Γ)²)."""

    def test_detuned_at_100K(self, service, reference_params):
        """δ = 10g, γ* = 0.22 meV → R ≈ 3.85 μeV."""
        assert service.effective_rate(reference_params(delta_over_g=10)) == pytest.approx(3.8549, abs=1e-3)

    def test_resonant_at_100K(self, service, reference_params):
        """δ = 0: R = 4g²/Γ = 10000/471."""
        assert service.effective_rate(reference_params()) == pytest.approx(10000 / 471, rel=1e-12)

    def test_detuned_at_50K(self, service, reference_params):
        assert service.effective_rate(reference_params(delta_over_g=10, T=50)) == pytest.approx(2.68, abs=0.01)

    def test_pump_enters_the_width(self, service, reference_params):
        """P = 2g at δ = 10g, 50 K raises R to ≈ 3.39; at δ = 0 it lowers it."""
        assert service.effective_rate(reference_params(10, 50, pump_over_g=2)) == pytest.approx(3.39, abs=0.01)
        assert service.effective_rate(reference_params(0, 50, pump_over_g=2)) < service.effective_rate(reference_params(0, 50))

    def test_detuning_sign_does_not_matter(self, service, reference_params):
        params = reference_params(delta_over_g=10)
        flipped = params.model_copy(update={"delta": -params.delta})
        assert service.effective_rate(flipped) == service.effective_rate(params)

    def test_node_maximum_at_100K(self, service, reference_params):
        rates = [service.effective_rate(reference_params(10, T)) for T in (50, 100, 150)]
        assert rates[1] > rates[0] and rates[1] > rates[2]


class TestEfficiency:
    """Test suite for E = (κ_out/κ) · x/(1+x)."""

    def test_no_output_coupling(self, service):
        params = SystemParams(g=50, gamma=1, kappa_in=5)
        assert service.efficiency(params) == 0.0

    def test_half_efficiency_point(self, service):
        """κ_in = κ_out and a large x: E just below 0.5."""
        params = SystemParams(g=50, gamma=0.5, gamma_star=40, kappa_in=2.5, kappa_out=2.5)
        assert service.efficiency(params) == pytest.approx(0.4990, abs=1e-4)
        assert service.efficiency(params) < 0.5

    def test_bounded_by_output_fraction(self, service, reference_params):
        params = reference_params()
        assert 0 < service.efficiency(params) < params.kappa_out / params.kappa


class TestPurcellFactor:
    """Test suite for F*."""

    def test_equals_rate_over_gamma_without_pump(self, service, reference_params):
        params = reference_params(delta_over_g=10)
        assert service.purcell_factor(params) == pytest.approx(
            service.effective_rate(params) / params.gamma, rel=1e-12
        )
        assert service.purcell_factor(params) == pytest.approx(3.85, abs=0.01)

    def test_resonant_closed_form(self, service):
        """δ = 0, γ* = 0: 4g²/((κ+γ)γ), → 4g²/(κγ) for γ ≪ κ."""
        params = SystemParams(g=50, gamma=1, kappa_in=5, kappa_out=245)
        assert service.purcell_factor(params) == pytest.approx(10000 / 251, rel=1e-12)
        assert service.purcell_factor(params) == pytest.approx(10000 / 250, rel=params.gamma / params.kappa)

    def test_gamma_doubled(self, service):
        params = SystemParams(g=50, gamma=1, gamma_star=40, kappa_in=5, kappa_out=245, delta=500)
        doubled = params.model_copy(update={"gamma": 2.0})

        width_old, width_new = 250 + 1 + 40, 250 + 2 + 40
        lorentz_old = 1 + (2 * 500 / width_old) ** 2
        lorentz_new = 1 + (2 * 500 / width_new) ** 2
        expected_ratio = (width_old * lorentz_old) / (width_new * lorentz_new) / 2
        assert service.purcell_factor(doubled) / service.purcell_factor(params) == pytest.approx(expected_ratio, rel=1e-12)

    def test_ignores_pump_and_logs(self, service, reference_params, caplog):
        pumped = reference_params(pump_over_g=2)
        with caplog.at_level(logging.DEBUG, logger="app.services.rates_service"):
            value = service.purcell_factor(pumped)
        assert value == service.purcell_factor(reference_params())
        assert "ignores the pump" in caplog.text

    def test_purcell_max(self, service):
        params = SystemParams(g=50, gamma=1, kappa_out=250, delta=500)
        assert service.purcell_max(params) == pytest.approx(5.0)

    def test_purcell_max_needs_detuning(self, service):
        with pytest.raises(NoInteriorOptimumError):
            service.purcell_max(SystemParams(g=50, gamma=1, kappa_out=250))


class TestOptimalDephasing:
    """Test suite for optimal_gamma_star."""

    def test_detuned_optimum(self, service):
        params = SystemParams(g=50, gamma=1, kappa_out=250, delta=500)
        result = service.optimal_gamma_star(params)

        assert result.gamma_star_opt == pytest.approx(749.0)
        assert result.r_max_exact == pytest.approx(5.0)
        assert result.r_max_approx == pytest.approx(4.0)  # R at Γ = |δ|: 0.8 g²/|δ|
        assert result.gamma_star_approx == pytest.approx(249.0)

    def test_optimum_really_maximizes(self, service):
        params = SystemParams(g=50, gamma=1, kappa_out=250, delta=500)
        best = service.optimal_gamma_star(params).gamma_star_opt

        at_best = service.effective_rate(params.model_copy(update={"gamma_star": best}))
        assert at_best == pytest.approx(5.0, rel=1e-12)
        for offset in (-10.0, 10.0):
            neighbour = params.model_copy(update={"gamma_star": best + offset})
            assert service.effective_rate(neighbour) < at_best

    def test_unreachable_optimum(self, service):
        """κ + γ already above 2|δ|: no non-negative γ* reaches the optimum."""
        params = SystemParams(g=50, gamma=1, kappa_out=1200, delta=500)
        result = service.optimal_gamma_star(params)
        assert result.gamma_star_opt is None
        assert result.gamma_star_approx is None

    def test_resonant_has_no_optimum(self, service):
        with pytest.raises(NoInteriorOptimumError):
            service.optimal_gamma_star(SystemParams(g=50, gamma=1, kappa_out=250))


class TestQualityFactors:
    """Test suite for Q_QD, Q_c and Q_eff."""

    def test_quality_factors(self, service, reference_params):
        params = reference_params()
        q = service.quality_factors(params, 1.3e6, 1.3e6)

        assert q.Q_qd == pytest.approx(1.3e6 / 221)
        assert q.Q_c == pytest.approx(1.3e6 / 250)
        assert 1 / q.Q_eff == pytest.approx(1 / q.Q_qd + 1 / q.Q_c)

    def test_rejects_non_positive_frequencies(self, service, reference_params):
        with pytest.raises(RatesError):
            service.quality_factors(reference_params(), 1.3e6, 0.0)

    def test_bad_cavity_ratio(self, service, reference_params):
        params = reference_params(delta_over_g=10)
        assert service.bad_cavity_ratio(params) == service.effective_rate(params) / 250


class TestRateEquations:
    """Test suite for the closed-form rate-equation solution."""

    def test_matches_matrix_exponential(self, service):
        rng = np.random.default_rng(7)
        times = np.linspace(0.0, 1.0, 11)
        for _ in range(20):
            params = SystemParams(
                g=rng.uniform(1, 100), gamma=rng.uniform(0.1, 10), gamma_star=rng.uniform(0, 500),
                kappa_in=rng.uniform(0, 50), kappa_out=rng.uniform(1, 500), delta=rng.uniform(-1000, 1000),
            )
            n0 = np.array([rng.uniform(0, 1), rng.uniform(0, 1)])
            solution = service.rate_equation_solution(params, n0[0], n0[1], times)
            oracle = np.array([expm(service.rate_matrix(params) * t) @ n0 for t in times])

            np.testing.assert_allclose(solution.n_e, oracle[:, 0], atol=1e-10)
            np.testing.assert_allclose(solution.n_ph, oracle[:, 1], atol=1e-10)

    def test_satisfies_the_equations(self, service):
        """Central differences reproduce d/dt (n_e, n_ph) = A (n_e, n_ph)."""
        params = SystemParams(g=0.5, gamma=0.1, kappa_out=2.0)
        h = 1e-5
        t = np.array([0.5 - h, 0.5, 0.5 + h])
        solution = service.rate_equation_solution(params, 1.0, 0.0, t)

        derivative = np.array([
            (solution.n_e[2] - solution.n_e[0]) / (2 * h),
            (solution.n_ph[2] - solution.n_ph[0]) / (2 * h),
        ])
        expected = service.rate_matrix(params) @ np.array([solution.n_e[1], solution.n_ph[1]])
        np.testing.assert_allclose(derivative, expected, atol=1e-8)

    def test_initial_condition_is_exact(self, service, reference_params):
        solution = service.rate_equation_solution(reference_params(), 0.7, 0.1, [0.0, 0.1])
        assert (solution.n_e[0], solution.n_ph[0]) == (0.7, 0.1)

    def test_eigenrates_slow_first(self, service, reference_params):
        """δ = 0 at 100 K: slow rate ≈ 20.43 μeV, below γ + R."""
        params = reference_params()
        slow, fast = service.rate_equation_solution(params, 1.0, 0.0, [0.0]).eigenrates
        assert slow < fast
        assert slow == pytest.approx(20.43, abs=0.01)
        assert slow + fast == pytest.approx(params.gamma + params.kappa + 2 * service.effective_rate(params))

    def test_degenerate_generator(self, service):
        """g = 0 and γ = κ: A = -γ I, plain exponential decay."""
        params = SystemParams(g=0, gamma=2.0, kappa_out=2.0)
        times = np.linspace(0, 1, 5)
        solution = service.rate_equation_solution(params, 1.0, 0.5, times)
        np.testing.assert_allclose(solution.n_e, np.exp(-2 * times), rtol=1e-14)
        np.testing.assert_allclose(solution.n_ph, 0.5 * np.exp(-2 * times), rtol=1e-14)

    @pytest.mark.parametrize("n_e0,n_ph0", [(1.5, 0.0), (-0.1, 0.0), (0.5, -1.0)])
    def test_invalid_initial_conditions(self, service, reference_params, n_e0, n_ph0):
        with pytest.raises(RatesError):
            service.rate_equation_solution(reference_params(), n_e0, n_ph0, [0.0])

    def test_pumped_rate_equations_rejected(self, service, reference_params):
        with pytest.raises(RatesError, match="P = 0"):
            service.rate_equation_solution(reference_params(pump_over_g=2), 1.0, 0.0, [0.0])
