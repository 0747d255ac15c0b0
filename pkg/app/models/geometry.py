from pydantic import BaseModel, ConfigDict, model_validator


class CavityGeometry(BaseModel):
    """Physical cavity description from which κ, κ_in and g are derived."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    d: float  # diameter, μm
    V: float  # mode volume, μm³
    R_l: float = 0.99  # left mirror reflectivity
    R_r: float = 0.99  # right mirror reflectivity
    alpha: float = 0.0  # one-round-trip internal loss, dimensionless
    M: float = 30.0  # transition dipole moment, Debye
    omega_qd: float = 1.3  # QD transition energy, eV

    @model_validator(mode="after")
    def _validate(self) -> "CavityGeometry":
        if not self.d > 0:
            raise ValueError("d must be positive")
        if not self.V > 0:
            raise ValueError("V must be positive")
        for name in ("R_l", "R_r"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise ValueError(f"{name} must lie in (0, 1]")
        if not self.alpha >= 0:
            raise ValueError("alpha must be non-negative")
        if not self.M > 0:
            raise ValueError("M must be positive")
        if not self.omega_qd > 0:
            raise ValueError("omega_qd must be positive")
        return self
