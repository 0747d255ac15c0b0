"""
LindbladService - full master-equation simulation of the QD-cavity system.

Frame rotating at ω_c, so only δ enters:
    H = δ σ₊σ₋ + i g (a†σ₋ - σ₊a)
    dρ/dt = -i[H, ρ] + γ D[σ₋] + κ D[a] + (γ*/4)(σ_z ρ σ_z - ρ) + P D[σ₊]
with D[c]ρ = cρc† - ½{c†c, ρ}. Times are in ħ/μeV.

Superoperators act on column-stacked vectors: vec(AρB) = (Bᵀ ⊗ A) vec(ρ).
Matrices are dense; the space is at most a few dozen states.
"""

import logging
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from app.core.config import Settings, get_settings
from app.models.lindblad import (
    DensityMatrix,
    ExpectationSeries,
    HilbertConfig,
    InvalidDensityMatrixError,
    OperatorSet,
    RateModelComparison,
    SteadyStateObservables,
    Trajectory,
    TRACE_TOL,
)
from app.models.params import SystemParams
from app.services.rates_service import RatesService

logger = logging.getLogger(__name__)

# Fit window for decay rates, relative to the initial value
FIT_WINDOW = (1e-4, 1e-1)
MIN_FIT_POINTS = 10
IMAG_TOL = 1e-10
STEADY_STATE_RESIDUAL = 1e-10


class LindbladError(Exception):
    """Base exception for master-equation errors."""
    pass


class IntegrationError(LindbladError):
    """Raised when the ODE integrator fails (e.g. step size underflow)."""
    pass


class TraceDriftError(LindbladError):
    """Raised when |Tr ρ - 1| exceeds the configured abort limit."""
    pass


class SteadyStateError(LindbladError):
    """Raised when the stationary state is not unique or not accurate."""
    pass


class DecayFitError(LindbladError):
    """Raised when a series cannot be fitted by a single exponential decay."""
    pass


def vec(rho: np.ndarray) -> np.ndarray:
    return rho.reshape(-1, order="F")


def unvec(v: np.ndarray, dimension: int) -> np.ndarray:
    return v.reshape((dimension, dimension), order="F")


# ============================================
# HERMITIAN COORDINATES
# ============================================
# A Hermitian d×d matrix is d² real numbers: the diagonal, then Re and Im of
# the strict upper triangle (row-major). Integrating these keeps every
# output exactly Hermitian.

def _coordinate_indices(dimension: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column-stacked positions of the diagonal, upper and lower entries."""
    rows, cols = np.triu_indices(dimension, k=1)
    diagonal = np.arange(dimension) * (dimension + 1)
    return diagonal, rows + cols * dimension, cols + rows * dimension


def hermitian_coordinates(rho: np.ndarray) -> np.ndarray:
    rows, cols = np.triu_indices(rho.shape[0], k=1)
    upper = rho[rows, cols]
    return np.concatenate([np.diag(rho).real, upper.real, upper.imag])


def from_hermitian_coordinates(x: np.ndarray, dimension: int) -> np.ndarray:
    rows, cols = np.triu_indices(dimension, k=1)
    n_upper = rows.size
    upper = x[dimension:dimension + n_upper] + 1j * x[dimension + n_upper:]

    rho = np.zeros((dimension, dimension), dtype=complex)
    rho[np.diag_indices(dimension)] = x[:dimension]
    rho[rows, cols] = upper
    rho[cols, rows] = upper.conj()
    return rho


class LindbladService:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.rates = RatesService()

    # ============================================
    # OPERATORS
    # ============================================

    def build_operators(self, hilbert: HilbertConfig) -> OperatorSet:
        """σ±, σ_z, a, a† as Kronecker products of two-level and Fock primitives."""
        qd_lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g⟩⟨e|
        fock_lower = np.diag(np.sqrt(np.arange(1, hilbert.n_levels)), k=1).astype(complex)
        id_qd = np.eye(2, dtype=complex)
        id_fock = np.eye(hilbert.n_levels, dtype=complex)

        sigma_minus = np.kron(qd_lower, id_fock)
        sigma_plus = sigma_minus.conj().T
        a = np.kron(id_qd, fock_lower)
        return OperatorSet(
            hilbert=hilbert,
            sigma_minus=sigma_minus,
            sigma_plus=sigma_plus,
            sigma_z=sigma_plus @ sigma_minus - sigma_minus @ sigma_plus,
            a=a,
            a_dagger=a.conj().T,
            identity=np.eye(hilbert.dimension, dtype=complex),
        )

    def hamiltonian(self, hilbert: HilbertConfig, params: SystemParams) -> np.ndarray:
        ops = self.build_operators(hilbert)
        return (
            params.delta * ops.n_excited
            + 1j * params.g * (ops.a_dagger @ ops.sigma_minus - ops.sigma_plus @ ops.a)
        )

    # ============================================
    # SUPEROPERATORS
    # ============================================

    @staticmethod
    def _dissipator(c: np.ndarray) -> np.ndarray:
        """D[c] in column-stacking form."""
        eye = np.eye(c.shape[0], dtype=complex)
        cdc = c.conj().T @ c
        return np.kron(c.conj(), c) - 0.5 * np.kron(eye, cdc) - 0.5 * np.kron(cdc.T, eye)

    def liouvillian(self, hilbert: HilbertConfig, params: SystemParams) -> np.ndarray:
        """Generator L with d vec(ρ)/dt = L vec(ρ)."""
        ops = self.build_operators(hilbert)
        H = self.hamiltonian(hilbert, params)
        eye = ops.identity

        L = -1j * (np.kron(eye, H) - np.kron(H.T, eye))
        L = L + params.gamma * self._dissipator(ops.sigma_minus)
        L = L + params.kappa * self._dissipator(ops.a)
        L = L + params.pump * self._dissipator(ops.sigma_plus)
        L = L + params.gamma_star / 4.0 * (
            np.kron(ops.sigma_z.T, ops.sigma_z) - np.kron(eye, eye)
        )
        return L

    def real_generator(self, hilbert: HilbertConfig, params: SystemParams) -> np.ndarray:
        """L in Hermitian coordinates: a real d²×d² matrix."""
        dim = hilbert.dimension
        diagonal, upper, lower = _coordinate_indices(dim)
        n_upper = upper.size
        off = np.arange(n_upper)

        # Columns are vec of the basis matrices of hermitian_coordinates
        basis = np.zeros((dim * dim, dim * dim), dtype=complex)
        basis[diagonal, np.arange(dim)] = 1.0
        basis[upper, dim + off] = 1.0
        basis[lower, dim + off] = 1.0
        basis[upper, dim + n_upper + off] = 1j
        basis[lower, dim + n_upper + off] = -1j

        images = self.liouvillian(hilbert, params) @ basis
        return np.concatenate(
            [images[diagonal].real, images[upper].real, images[upper].imag], axis=0
        )

    # ============================================
    # DYNAMICS
    # ============================================

    def evolve(
        self,
        hilbert: HilbertConfig,
        params: SystemParams,
        rho0: DensityMatrix,
        t_grid: Sequence[float],
    ) -> Trajectory:
        """
        Integrate the master equation with an embedded Runge-Kutta 4(5) pair.

        The state is carried in Hermitian coordinates, so outputs are Hermitian
        exactly. No renormalization: the trace error of every output is a
        diagnostic, and drift beyond the configured limit aborts the run.
        """
        times = np.asarray(t_grid, dtype=float)
        if times.ndim != 1 or times.size == 0 or times[0] != 0:
            raise LindbladError("t_grid must be a non-empty sequence starting at 0")
        if np.any(np.diff(times) <= 0):
            raise LindbladError("t_grid must be strictly increasing")
        if rho0.hilbert != hilbert:
            raise LindbladError("rho0 lives on a different Hilbert space")
        rho0.check()

        dim = hilbert.dimension
        generator = self.real_generator(hilbert, params)
        x0 = hermitian_coordinates(rho0.data)

        if times.size == 1:
            vectors = x0[:, None]
        else:
            solution = solve_ivp(
                lambda _t, x: generator @ x,
                (0.0, float(times[-1])),
                x0,
                method="RK45",
                t_eval=times,
                rtol=self.settings.ode_rtol,
                atol=self.settings.ode_atol,
            )
            if not solution.success:
                raise IntegrationError(f"integration failed: {solution.message}")
            vectors = solution.y
            logger.info(
                "Integrated %d outputs in %d RHS evaluations", times.size, solution.nfev
            )

        states: list[DensityMatrix] = []
        diagnostics = []
        for k, t in enumerate(times):
            state = DensityMatrix(
                hilbert=hilbert, data=from_hermitian_coordinates(vectors[:, k], dim)
            )
            diag = state.diagnostics()
            if diag.trace_error > self.settings.trace_drift_limit:
                raise TraceDriftError(
                    f"trace drift {diag.trace_error:.3e} at t={t:g} "
                    f"(hermiticity defect {diag.hermiticity_defect:.3e}, "
                    f"min eigenvalue {diag.min_eigenvalue:.3e})"
                )
            if diag.trace_error > TRACE_TOL:
                logger.warning("Trace error %.3e at t=%g", diag.trace_error, t)
            state.check(trace_tol=self.settings.trace_drift_limit)
            states.append(state)
            diagnostics.append(diag)

        return Trajectory(times=times, states=states, diagnostics=diagnostics)

    def expectations(self, trajectory: Trajectory) -> ExpectationSeries:
        """⟨σ₊σ₋⟩ and ⟨a†a⟩ along a trajectory."""
        ops = self.build_operators(trajectory.states[0].hilbert)
        stack = np.array([state.data for state in trajectory.states])
        n_e = np.einsum("tij,ji->t", stack, ops.n_excited)
        n_ph = np.einsum("tij,ji->t", stack, ops.n_photon)

        worst_imag = max(np.max(np.abs(n_e.imag)), np.max(np.abs(n_ph.imag)))
        if worst_imag > IMAG_TOL:
            raise InvalidDensityMatrixError(f"complex expectation value (imag {worst_imag:.3e})")
        n_e = n_e.real
        if np.any(n_e < -TRACE_TOL) or np.any(n_e > 1 + TRACE_TOL):
            raise InvalidDensityMatrixError("<sigma+ sigma-> outside [0, 1]")

        return ExpectationSeries(times=trajectory.times, n_e=n_e, n_ph=n_ph.real)

    # ============================================
    # STEADY STATE
    # ============================================

    def steady_state(self, hilbert: HilbertConfig, params: SystemParams) -> DensityMatrix:
        """
        Solve L(ρ) = 0 with Tr ρ = 1 as one bordered least-squares system.

        A rank-deficient bordered matrix means the stationary state is not unique.
        """
        dim = hilbert.dimension
        L = self.liouvillian(hilbert, params)
        trace_row = vec(np.eye(dim, dtype=complex))[None, :]
        bordered = np.vstack([L, trace_row])
        rhs = np.zeros(dim * dim + 1, dtype=complex)
        rhs[-1] = 1.0

        singular_values = np.linalg.svd(bordered, compute_uv=False)
        if singular_values[-1] <= 1e-12 * singular_values[0]:
            raise SteadyStateError(
                "stationary state is not unique (singular bordered system); "
                "check that some dissipation channel is active"
            )

        solution, *_ = np.linalg.lstsq(bordered, rhs, rcond=None)
        residual = float(np.linalg.norm(L @ solution))
        if residual > STEADY_STATE_RESIDUAL:
            raise SteadyStateError(f"steady-state residual {residual:.3e} too large")

        state = DensityMatrix(hilbert=hilbert, data=unvec(solution, dim))
        state.check()
        return state

    def steady_state_observables(
        self, hilbert: HilbertConfig, params: SystemParams
    ) -> SteadyStateObservables:
        """Continuous-wave populations and the output photon flux κ_out·⟨a†a⟩."""
        rho = self.steady_state(hilbert, params).data
        ops = self.build_operators(hilbert)
        n_e = float(np.real(np.trace(rho @ ops.n_excited)))
        n_ph = float(np.real(np.trace(rho @ ops.n_photon)))
        return SteadyStateObservables(
            n_e=n_e, n_ph=n_ph, photon_flux_out=params.kappa_out * n_ph
        )

    # ============================================
    # RATE-MODEL BRIDGE
    # ============================================

    def fit_decay_rate(self, times: Sequence[float], values: Sequence[float]) -> float:
        """
        Exponential decay rate from a least-squares fit of log(value) against t.

        Only points with value/value[0] inside FIT_WINDOW are used.
        """
        t = np.asarray(times, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape:
            raise DecayFitError(
                f"times and values must be 1-D of equal length, got {t.shape} and {v.shape}"
            )
        if t.size == 0 or v[0] <= 0:
            raise DecayFitError("series must start with a positive value")

        ratio = v / v[0]
        window = (ratio >= FIT_WINDOW[0]) & (ratio <= FIT_WINDOW[1])
        if np.count_nonzero(window) < MIN_FIT_POINTS:
            raise DecayFitError(
                f"only {np.count_nonzero(window)} points inside the fit window "
                f"(need {MIN_FIT_POINTS})"
            )
        if np.any(v[window] <= 0):
            raise DecayFitError("non-positive values inside the fit window")

        slope, _ = np.polyfit(t[window], np.log(v[window]), 1)
        if slope >= 0:
            raise DecayFitError("series is not decaying inside the fit window")
        return float(-slope)

    def compare_with_rate_model(
        self,
        params: SystemParams,
        hilbert: HilbertConfig,
        t_grid: Sequence[float],
    ) -> RateModelComparison:
        """Fitted decay of ⟨σ₊σ₋⟩ from |e,0⟩ against γ + R."""
        if params.pump != 0:
            raise LindbladError("the decay comparison needs P = 0")
        rho0 = DensityMatrix.basis_state(hilbert, "e", 0)
        series = self.expectations(self.evolve(hilbert, params, rho0, t_grid))
        return RateModelComparison(
            fitted_rate=self.fit_decay_rate(series.times, series.n_e),
            predicted_rate=params.gamma + self.rates.effective_rate(params),
        )
