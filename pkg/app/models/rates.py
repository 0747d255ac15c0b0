from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict


class RateSolution(BaseModel):
    """Closed-form solution of the two-variable rate equations."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray  # ħ/μeV
    n_e: np.ndarray  # QD excited population
    n_ph: np.ndarray  # cavity photon number
    eigenrates: tuple[float, float]  # decay constants, μeV, slow first


class OptimalDephasing(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_star_opt: Optional[float]  # None when 2|δ| - κ - γ - P < 0
    r_max_exact: float  # g²/|δ|
    r_max_approx: float  # R at the approximate condition κ + γ + γ* + P = |δ|
    gamma_star_approx: Optional[float]  # γ* satisfying that condition, when ≥ 0


class QualityFactors(BaseModel):
    model_config = ConfigDict(frozen=True)

    Q_qd: float
    Q_c: float
    Q_eff: float
