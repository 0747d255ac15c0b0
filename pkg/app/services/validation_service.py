"""
ValidationService - the acceptance suite behind ``qdcav validate``.

Cross-checks the closed-form rate model against itself, against the full
master equation and against independent numerical oracles (dense grids,
scipy's bounded minimizer, matrix exponentials). Every check returns a
CheckResult instead of raising, so one failure never hides the others.
"""

import logging
from typing import Callable, Optional

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize_scalar

from app.core.config import Settings, get_settings
from app.models.dephasing import DephasingTable
from app.models.geometry import CavityGeometry
from app.models.lindblad import DensityMatrix, HilbertConfig
from app.models.params import SystemParams
from app.models.validation import CheckResult
from app.services.dephasing_service import DephasingError, DephasingService
from app.services.geometry_service import GeometryError, GeometryService
from app.services.lindblad_service import LindbladError, LindbladService
from app.services.rates_service import RatesError, RatesService

logger = logging.getLogger(__name__)

# Reference device: g = 50 μeV, γ = 0.02g, κ = 5g with κ_in = 5 μeV
G_REF = 50.0
KAPPA_IN_REF = 5.0
KAPPA_REF = 5.0 * G_REF

EXPECTED_R_100K = 3.85  # μeV at δ = 10g, T = 100 K
REPORTED_R_MAX = 4.0
RANDOM_DRAWS = 1000
SEED = 20240601


class ValidationService:
    def __init__(
        self,
        settings: Optional[Settings] = None,
        table: Optional[DephasingTable] = None,
    ):
        self.settings = settings or get_settings()
        self.dephasing = DephasingService()
        self.table = table or self.dephasing.builtin_ingaas()
        self.geometry = GeometryService()
        self.rates = RatesService()
        self.lindblad = LindbladService(self.settings)
        self.hilbert = HilbertConfig(n_max=self.settings.default_n_max)

    def reference_params(
        self,
        delta_over_g: float = 0.0,
        T: float = 100.0,
        gamma_over_g: float = 0.02,
        pump_over_g: float = 0.0,
    ) -> SystemParams:
        return SystemParams(
            g=G_REF,
            gamma=gamma_over_g * G_REF,
            gamma_star=self.dephasing.gamma_star_at(self.table, T),
            kappa_in=KAPPA_IN_REF,
            kappa_out=KAPPA_REF - KAPPA_IN_REF,
            delta=delta_over_g * G_REF,
            pump=pump_over_g * G_REF,
        )

    # ============================================
    # CLOSED-FORM CHECKS
    # ============================================

    def check_r_max(self) -> CheckResult:
        R = self.rates.effective_rate(self.reference_params(delta_over_g=10.0))
        deviation = abs(R - REPORTED_R_MAX) / REPORTED_R_MAX
        passed = abs(R - EXPECTED_R_100K) <= 0.01 and deviation <= 0.1
        return CheckResult(
            name="r_max_reproduction",
            passed=passed,
            detail=f"R={R:.4f} ueV (expected {EXPECTED_R_100K}, {deviation:.1%} from {REPORTED_R_MAX})",
        )

    def check_exact_optimality(self) -> CheckResult:
        params = self.reference_params(delta_over_g=10.0)
        optimum = self.rates.optimal_gamma_star(params)
        fixed = params.kappa + params.gamma + params.pump

        def rate(gamma_star):
            return self.rates.lorentzian_rate(
                params.g, fixed + gamma_star, params.delta
            )

        grid = np.linspace(0.0, 20.0 * abs(params.delta), 400_001)
        best = int(np.argmax(rate(grid)))
        refined = minimize_scalar(
            lambda x: -rate(x),
            bounds=(grid[max(best - 1, 0)], grid[min(best + 1, grid.size - 1)]),
            method="bounded",
            options={"xatol": 1e-9},
        )
        r_numeric = -float(refined.fun)
        analytic = params.g**2 / abs(params.delta)
        passed = (
            abs(r_numeric - optimum.r_max_exact) <= 1e-9 * optimum.r_max_exact
            and optimum.r_max_exact == analytic
            and optimum.gamma_star_opt is not None
            and abs(refined.x - optimum.gamma_star_opt) <= 1e-3
        )
        return CheckResult(
            name="exact_optimality",
            passed=passed,
            detail=(
                f"numeric max {r_numeric:.12g} at gamma*={refined.x:.6g}, "
                f"analytic {optimum.r_max_exact:.12g} at gamma*={optimum.gamma_star_opt}"
            ),
        )

    def check_half_efficiency(self) -> CheckResult:
        params = SystemParams(
            g=G_REF, gamma=0.5, gamma_star=40.0, kappa_in=2.5, kappa_out=2.5
        )
        R = self.rates.effective_rate(params)
        x = R * (1.0 / params.kappa + 1.0 / params.gamma)
        E = self.rates.efficiency(params)
        return CheckResult(
            name="half_efficiency",
            passed=x > 100 and 0.495 < E < 0.5,
            detail=f"x={x:.1f} E={E:.6f}",
        )

    def _random_params(self, rng: np.random.Generator) -> SystemParams:
        return SystemParams(
            g=rng.uniform(1.0, 100.0),
            gamma=rng.uniform(0.1, 10.0),
            gamma_star=rng.uniform(0.0, 500.0),
            kappa_in=rng.uniform(0.0, 50.0),
            kappa_out=rng.uniform(1.0, 500.0),
            delta=rng.uniform(-1000.0, 1000.0),
        )

    def check_purcell_identities(self) -> CheckResult:
        rng = np.random.default_rng(SEED)
        worst = 0.0
        for _ in range(RANDOM_DRAWS):
            params = self._random_params(rng)
            ratio = self.rates.purcell_factor(params) * params.gamma / self.rates.effective_rate(params)
            worst = max(worst, abs(ratio - 1.0))

        # δ = 0, γ* = 0: exact 4g²/((κ+γ)γ), which tends to 4g²/(κγ) for γ ≪ κ
        params = SystemParams(g=G_REF, gamma=1.0, kappa_in=KAPPA_IN_REF, kappa_out=KAPPA_REF - KAPPA_IN_REF)
        F = self.rates.purcell_factor(params)
        exact = 4 * params.g**2 / ((params.kappa + params.gamma) * params.gamma)
        limit = 4 * params.g**2 / (params.kappa * params.gamma)
        closed_form = abs(F - exact) <= 1e-12 * exact
        near_limit = abs(F - limit) / limit <= params.gamma / params.kappa

        return CheckResult(
            name="purcell_identities",
            passed=worst <= 1e-12 and closed_form and near_limit,
            detail=f"max |F*gamma/R - 1|={worst:.2e} over {RANDOM_DRAWS} draws, F*(0,0)={F:.6g}",
        )

    def check_geometry_scalings(self) -> CheckResult:
        base = CavityGeometry(d=2.0, V=10.0, alpha=1e-3)

        def scaled(**update) -> CavityGeometry:
            return CavityGeometry(**{**base.model_dump(), **update})

        ratios = {
            "kappa(V)/kappa(2V)": self.geometry.total_loss(base) / self.geometry.total_loss(scaled(V=20.0)),
            "kappa_in(V)/kappa_in(2V)": self.geometry.internal_loss(base) / self.geometry.internal_loss(scaled(V=20.0)),
            "kappa(2d)/kappa(d)": self.geometry.total_loss(scaled(d=4.0)) / self.geometry.total_loss(base),
            "kappa_in(2d)/kappa_in(d)": self.geometry.internal_loss(scaled(d=4.0)) / self.geometry.internal_loss(base),
            "g(V)/g(4V)": self.geometry.coupling_strength(base) / self.geometry.coupling_strength(scaled(V=40.0)),
            "g(4w)/g(w)": self.geometry.coupling_strength(scaled(omega_qd=5.2)) / self.geometry.coupling_strength(base),
        }
        expected = {
            "kappa(V)/kappa(2V)": 2.0,
            "kappa_in(V)/kappa_in(2V)": 2.0,
            "kappa(2d)/kappa(d)": 4.0,
            "kappa_in(2d)/kappa_in(d)": 4.0,
            "g(V)/g(4V)": 2.0,
            "g(4w)/g(w)": 2.0,
        }
        failed = [k for k, v in ratios.items() if abs(v / expected[k] - 1.0) > 1e-12]
        return CheckResult(
            name="geometry_scalings",
            passed=not failed,
            detail="all ratios exact" if not failed else "off: " + ", ".join(failed),
        )

    def check_rate_equation_oracle(self) -> CheckResult:
        rng = np.random.default_rng(SEED + 1)
        times = np.linspace(0.0, 2.0, 21)
        worst = 0.0
        for _ in range(50):
            params = self._random_params(rng)
            n0 = np.array([rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)])
            solution = self.rates.rate_equation_solution(params, n0[0], n0[1], times)
            A = self.rates.rate_matrix(params)
            oracle = np.array([expm(A * t) @ n0 for t in times])
            worst = max(
                worst,
                float(np.max(np.abs(solution.n_e - oracle[:, 0]))),
                float(np.max(np.abs(solution.n_ph - oracle[:, 1]))),
            )
        return CheckResult(
            name="rate_equation_oracle",
            passed=worst <= 1e-10,
            detail=f"max deviation from expm {worst:.2e}",
        )

    def check_trends(self) -> CheckResult:
        nodes = list(self.table.temperatures)
        failures = []

        def series(fn: Callable[[SystemParams], float], **kwargs) -> list[float]:
            return [fn(self.reference_params(T=T, **kwargs)) for T in nodes]

        R_res = series(self.rates.effective_rate)
        E_res = series(self.rates.efficiency)
        if not all(a > b for a, b in zip(R_res, R_res[1:])):
            failures.append("R(delta=0) not decreasing in T")
        if not all(a > b for a, b in zip(E_res, E_res[1:])):
            failures.append("E(delta=0) not decreasing in T")

        R_det = series(self.rates.effective_rate, delta_over_g=10.0)
        if 100.0 in nodes and nodes[int(np.argmax(R_det))] != 100.0:
            failures.append(f"R(delta=10g) peaks at {nodes[int(np.argmax(R_det))]:g} K")

        if 50.0 in nodes:
            pumped = self.rates.effective_rate(self.reference_params(10.0, 50.0, pump_over_g=2.0))
            bare = self.rates.effective_rate(self.reference_params(10.0, 50.0))
            if not pumped > bare:
                failures.append("pump does not raise R at delta=10g, 50 K")
            pumped = self.rates.effective_rate(self.reference_params(0.0, 50.0, pump_over_g=2.0))
            bare = self.rates.effective_rate(self.reference_params(0.0, 50.0))
            if not pumped < bare:
                failures.append("pump does not lower R at delta=0, 50 K")

        for delta_over_g in (0.0, 10.0):
            curves = [
                series(self.rates.purcell_factor, delta_over_g=delta_over_g, gamma_over_g=gog)
                for gog in (0.01, 0.02, 0.03)
            ]
            for low, high in zip(curves, curves[1:]):
                if not all(a > b for a, b in zip(low, high)):
                    failures.append(f"F* not decreasing in gamma at delta={delta_over_g:g}g")

        return CheckResult(
            name="trend_suite",
            passed=not failures,
            detail=f"{len(nodes)} nodes" if not failures else "; ".join(failures),
        )

    # ============================================
    # MASTER-EQUATION CHECKS
    # ============================================

    def check_vacuum_rabi(self) -> CheckResult:
        rho0 = DensityMatrix.basis_state(self.hilbert, "e", 0)
        worst = 0.0
        for delta in (0.0, 2.0 * G_REF):
            params = SystemParams.lossless_allowed(g=G_REF, gamma=0.0, delta=delta)
            omega = np.sqrt(4 * G_REF**2 + delta**2)
            times = np.linspace(0.0, 3 * 2 * np.pi / omega, 301)
            series = self.lindblad.expectations(
                self.lindblad.evolve(self.hilbert, params, rho0, times)
            )
            analytic = 1.0 - 4 * G_REF**2 / omega**2 * np.sin(omega * times / 2) ** 2
            worst = max(worst, float(np.max(np.abs(series.n_e - analytic))))
        return CheckResult(
            name="vacuum_rabi",
            passed=worst <= 1e-6,
            detail=f"max deviation {worst:.2e} (resonant and delta=2g)",
        )

    def check_adiabatic_elimination(self) -> CheckResult:
        details = []
        passed = True
        for delta_over_g, t_max, points in ((0.0, 0.6, 601), (10.0, 2.5, 1001)):
            params = self.reference_params(delta_over_g=delta_over_g)
            comparison = self.lindblad.compare_with_rate_model(
                params, self.hilbert, np.linspace(0.0, t_max, points)
            )
            passed = passed and comparison.relative_error <= 0.1
            details.append(
                f"delta={delta_over_g:g}g fit={comparison.fitted_rate:.4f} "
                f"gamma+R={comparison.predicted_rate:.4f}"
            )
        return CheckResult(name="adiabatic_elimination", passed=passed, detail="; ".join(details))

    def check_conservation(self) -> CheckResult:
        runs = [
            (self.reference_params(delta_over_g=0.0), "e", 0.6),
            (self.reference_params(delta_over_g=10.0), "e", 2.5),
            (self.reference_params(delta_over_g=0.0, pump_over_g=2.0), "g", 0.5),
        ]
        worst_trace = worst_herm = 0.0
        min_eig = np.inf
        for params, state, t_max in runs:
            rho0 = DensityMatrix.basis_state(self.hilbert, state, 0)
            trajectory = self.lindblad.evolve(
                self.hilbert, params, rho0, np.linspace(0.0, t_max, 251)
            )
            for diag in trajectory.diagnostics:
                worst_trace = max(worst_trace, diag.trace_error)
                worst_herm = max(worst_herm, diag.hermiticity_defect)
                min_eig = min(min_eig, diag.min_eigenvalue)

        pumped = self.reference_params(delta_over_g=0.0, pump_over_g=2.0)
        small = self.lindblad.steady_state_observables(self.hilbert, pumped)
        large = self.lindblad.steady_state_observables(
            HilbertConfig(n_max=self.hilbert.n_max + 2), pumped
        )
        truncation = max(abs(small.n_e - large.n_e), abs(small.n_ph - large.n_ph))

        passed = (
            worst_trace < 1e-8 and worst_herm < 1e-10 and min_eig > -1e-8 and truncation < 1e-6
        )
        return CheckResult(
            name="conservation",
            passed=passed,
            detail=(
                f"trace {worst_trace:.1e}, hermiticity {worst_herm:.1e}, "
                f"min eig {min_eig:.1e}, truncation {truncation:.1e}"
            ),
        )

    # ============================================
    # SUITE
    # ============================================

    def checks(self) -> list[Callable[[], CheckResult]]:
        return [
            self.check_r_max,
            self.check_exact_optimality,
            self.check_half_efficiency,
            self.check_purcell_identities,
            self.check_vacuum_rabi,
            self.check_adiabatic_elimination,
            self.check_conservation,
            self.check_trends,
            self.check_geometry_scalings,
            self.check_rate_equation_oracle,
        ]

    def run_all(self) -> list[CheckResult]:
        results = []
        for check in self.checks():
            name = check.__name__.removeprefix("check_")
            try:
                result = check()
            except (
                DephasingError,
                GeometryError,
                LindbladError,
                RatesError,
                ValueError,
            ) as exc:
                logger.error("Check %s raised: %s", name, exc)
                result = CheckResult(name=name, passed=False, detail=f"error: {exc}")
            results.append(result)
        return results
