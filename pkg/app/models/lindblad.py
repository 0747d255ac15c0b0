"""
Lindblad-side types: truncated QD⊗Fock space, density matrices, operator sets
and trajectories.

Basis ordering is |s⟩⊗|n⟩ with s ∈ {g, e} and n ∈ {0..n_max}, flat index
s·(n_max+1) + n.
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

QDState = Literal["g", "e"]

# Tolerances of the DensityMatrix invariants
TRACE_TOL = 1e-8
HERMITICITY_TOL = 1e-10
POSITIVITY_TOL = 1e-8


class InvalidDensityMatrixError(ValueError):
    """Raised when a matrix is not Hermitian, unit-trace and positive semidefinite."""
    pass


class HilbertConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_max: int = Field(5, ge=1)  # highest Fock level kept

    @property
    def n_levels(self) -> int:
        return self.n_max + 1

    @property
    def dimension(self) -> int:
        return 2 * self.n_levels

    def index(self, s: QDState, n: int) -> int:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"Fock index {n} outside 0..{self.n_max}")
        return (1 if s == "e" else 0) * self.n_levels + n


class DensityDiagnostics(BaseModel):
    model_config = ConfigDict(frozen=True)

    trace_error: float
    hermiticity_defect: float
    min_eigenvalue: float


class DensityMatrix(BaseModel):
    """Complex square matrix on the truncated space, with invariant checks."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hilbert: HilbertConfig
    data: np.ndarray

    @classmethod
    def basis_state(cls, hilbert: HilbertConfig, s: QDState, n: int) -> "DensityMatrix":
        """Pure state |s,n⟩⟨s,n|."""
        rho = np.zeros((hilbert.dimension, hilbert.dimension), dtype=complex)
        k = hilbert.index(s, n)
        rho[k, k] = 1.0
        return cls(hilbert=hilbert, data=rho)

    @classmethod
    def diagonal(cls, hilbert: HilbertConfig, populations: list[float]) -> "DensityMatrix":
        """Diagonal state from populations listed in basis order."""
        if len(populations) != hilbert.dimension:
            raise InvalidDensityMatrixError(
                f"expected {hilbert.dimension} populations, got {len(populations)}"
            )
        return cls(hilbert=hilbert, data=np.diag(np.asarray(populations, dtype=complex)))

    def diagnostics(self) -> DensityDiagnostics:
        rho = self.data
        hermitian_part = 0.5 * (rho + rho.conj().T)
        return DensityDiagnostics(
            trace_error=float(abs(np.trace(rho) - 1.0)),
            hermiticity_defect=float(np.max(np.abs(rho - rho.conj().T))),
            min_eigenvalue=float(np.min(np.linalg.eigvalsh(hermitian_part))),
        )

    def check(
        self,
        trace_tol: float = TRACE_TOL,
        hermiticity_tol: float = HERMITICITY_TOL,
        positivity_tol: float = POSITIVITY_TOL,
    ) -> DensityDiagnostics:
        """Return the diagnostics, raising when any invariant is violated."""
        diag = self.diagnostics()
        if diag.hermiticity_defect > hermiticity_tol:
            raise InvalidDensityMatrixError(
                f"not Hermitian: max |rho - rho^dag| = {diag.hermiticity_defect:.3e}"
            )
        if diag.trace_error > trace_tol:
            raise InvalidDensityMatrixError(f"trace error {diag.trace_error:.3e}")
        if diag.min_eigenvalue < -positivity_tol:
            raise InvalidDensityMatrixError(
                f"negative eigenvalue {diag.min_eigenvalue:.3e}"
            )
        return diag


class OperatorSet(BaseModel):
    """σ₋, σ₊, σ_z, a, a† and the identity on the full space."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hilbert: HilbertConfig
    sigma_minus: np.ndarray
    sigma_plus: np.ndarray
    sigma_z: np.ndarray
    a: np.ndarray
    a_dagger: np.ndarray
    identity: np.ndarray

    @property
    def n_excited(self) -> np.ndarray:
        """σ₊σ₋, projector on the excited QD subspace."""
        return self.sigma_plus @ self.sigma_minus

    @property
    def n_photon(self) -> np.ndarray:
        return self.a_dagger @ self.a


class Trajectory(BaseModel):
    """Density matrices on a time grid (times in ħ/μeV)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: list[DensityMatrix]
    diagnostics: list[DensityDiagnostics]


class ExpectationSeries(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    n_e: np.ndarray  # ⟨σ₊σ₋⟩
    n_ph: np.ndarray  # ⟨a†a⟩


class SteadyStateObservables(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_e: float
    n_ph: float
    photon_flux_out: float  # κ_out·⟨a†a⟩, μeV (photons per ħ/μeV)


class RateModelComparison(BaseModel):
    """Fitted Lindblad decay of ⟨σ₊σ₋⟩ against the rate-model prediction γ + R."""

    model_config = ConfigDict(frozen=True)

    fitted_rate: float
    predicted_rate: float

    @property
    def relative_error(self) -> float:
        return abs(self.fitted_rate - self.predicted_rate) / self.predicted_rate
