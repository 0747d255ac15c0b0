"""
RatesService - closed-form adiabatic-elimination model.

Business logic for the quantities a single-photon-source designer reads off
the rate model:
- effective transfer rate R = (4g²/Γ) / (1 + (2δ/Γ)²),  Γ = P + γ + γ* + κ
- efficiency E = (κ_out/κ) · x/(1+x),  x = R(1/κ + 1/γ)
- generalized Purcell factor F* (no pump term, as printed)
- quality factors, optimality conditions, and the two-variable rate equations

All inputs and outputs are energies in μeV with ħ = 1.
"""

import logging
from typing import Sequence

import numpy as np

from app.models.params import SystemParams
from app.models.rates import OptimalDephasing, QualityFactors, RateSolution

logger = logging.getLogger(__name__)


class RatesError(Exception):
    """Base exception for rate-model errors."""
    pass


class NoInteriorOptimumError(RatesError):
    """Raised at δ = 0, where R decreases monotonically in Γ."""
    pass


class RatesService:
    def lorentzian_rate(self, g: float, width: float, delta: float) -> float:
        """(4g²/width) / (1 + (2δ/width)²); works elementwise on arrays."""
        return 4.0 * g**2 / width / (1.0 + (2.0 * delta / width) ** 2)

    def effective_rate(self, params: SystemParams) -> float:
        """Effective QD → cavity transfer rate R (pump included through Γ)."""
        return self.lorentzian_rate(params.g, params.total_decoherence, params.delta)

    def efficiency(self, params: SystemParams) -> float:
        """Probability that an excitation leaves through the output mirror."""
        if params.kappa_out == 0:
            return 0.0
        x = self.effective_rate(params) * (1.0 / params.kappa + 1.0 / params.gamma)
        return params.kappa_out / params.kappa * x / (1.0 + x)

    def purcell_factor(self, params: SystemParams) -> float:
        """
        Generalized Purcell factor F*.

        Evaluated as printed, without a pump term: F* = R/γ holds exactly
        only for P = 0.
        """
        if params.pump > 0:
            logger.debug(
                "purcell_factor ignores the pump (P=%g ueV); F* != R/gamma here", params.pump
            )
        width = params.kappa + params.gamma + params.gamma_star
        return self.lorentzian_rate(params.g, width, params.delta) / params.gamma

    def bad_cavity_ratio(self, params: SystemParams) -> float:
        """R/κ; the model assumes R ≪ κ."""
        return self.effective_rate(params) / params.kappa

    def optimal_gamma_star(self, params: SystemParams) -> OptimalDephasing:
        """
        Dephasing that maximizes R at fixed δ ≠ 0.

        R(Γ) = 4g²Γ/(Γ² + 4δ²) peaks at Γ = 2|δ| with R_max = g²/|δ|. The
        approximate condition κ + γ + γ* ≈ |δ| is reported alongside.
        """
        if params.delta == 0:
            raise NoInteriorOptimumError("delta = 0: R decreases monotonically with Gamma")

        detuning = abs(params.delta)
        fixed = params.kappa + params.gamma + params.pump
        optimum = 2.0 * detuning - fixed
        approx = detuning - fixed
        return OptimalDephasing(
            gamma_star_opt=optimum if optimum >= 0 else None,
            r_max_exact=params.g**2 / detuning,
            r_max_approx=self.lorentzian_rate(params.g, detuning, detuning),
            gamma_star_approx=approx if approx >= 0 else None,
        )

    def purcell_max(self, params: SystemParams) -> float:
        """Maximum of F* over γ*: g²/(γ|δ|)."""
        if params.delta == 0:
            raise NoInteriorOptimumError("delta = 0: F* decreases monotonically with gamma*")
        return params.g**2 / (params.gamma * abs(params.delta))

    def quality_factors(
        self, params: SystemParams, omega_qd: float, omega_c: float
    ) -> QualityFactors:
        """Q_QD = ω_QD/(γ+γ*), Q_c = ω_c/κ and their harmonic combination Q_eff."""
        if omega_qd <= 0 or omega_c <= 0:
            raise RatesError("omega_qd and omega_c must be positive")
        q_qd = omega_qd / (params.gamma + params.gamma_star)
        q_c = omega_c / params.kappa
        return QualityFactors(Q_qd=q_qd, Q_c=q_c, Q_eff=1.0 / (1.0 / q_qd + 1.0 / q_c))

    def rate_matrix(self, params: SystemParams) -> np.ndarray:
        """Generator A of d/dt (n_e, n_ph) = A (n_e, n_ph)."""
        R = self.effective_rate(params)
        return np.array([
            [-(params.gamma + R), R],
            [R, -(params.kappa + R)],
        ])

    def rate_equation_solution(
        self,
        params: SystemParams,
        n_e0: float,
        n_ph0: float,
        t_grid: Sequence[float],
    ) -> RateSolution:
        """
        Closed-form solution of the unpumped rate equations.

        A is real symmetric, so an orthogonal eigendecomposition always exists;
        the degenerate case (A = λI) needs no special treatment.
        """
        if params.pump != 0:
            raise RatesError("rate equations are only defined for P = 0")
        if not 0 <= n_e0 <= 1:
            raise RatesError(f"n_e0 must lie in [0, 1], got {n_e0}")
        if n_ph0 < 0:
            raise RatesError(f"n_ph0 must be non-negative, got {n_ph0}")

        times = np.asarray(t_grid, dtype=float)
        eigvals, eigvecs = np.linalg.eigh(self.rate_matrix(params))

        # Project the initial condition on the eigenbasis, evolve each mode
        coeffs = eigvecs.T @ np.array([n_e0, n_ph0])
        modes = np.exp(np.outer(times, eigvals)) * coeffs
        populations = modes @ eigvecs.T

        populations[times == 0] = (n_e0, n_ph0)
        return RateSolution(
            times=times,
            n_e=populations[:, 0],
            n_ph=populations[:, 1],
            eigenrates=(float(-eigvals[1]), float(-eigvals[0])),
        )
