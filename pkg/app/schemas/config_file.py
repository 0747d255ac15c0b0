"""
Section schemas of the problem configuration INI file.

Values arrive as strings from configparser; pydantic coerces them. Energy
keys come in two spellings, absolute (``*_ueV``) or relative to g
(``*_over_g``), never both.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ENERGY_KEYS = ("gamma", "gamma_star", "kappa", "kappa_in", "kappa_out", "delta", "pump")


def _split_list(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class SystemSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    g_ueV: float
    gamma_ueV: Optional[float] = None
    gamma_over_g: Optional[float] = None
    gamma_star_ueV: Optional[float] = None
    gamma_star_over_g: Optional[float] = None
    kappa_ueV: Optional[float] = None  # total κ, κ_out = κ - κ_in
    kappa_over_g: Optional[float] = None
    kappa_in_ueV: Optional[float] = None
    kappa_in_over_g: Optional[float] = None
    kappa_out_ueV: Optional[float] = None
    kappa_out_over_g: Optional[float] = None
    delta_ueV: Optional[float] = None
    delta_over_g: Optional[float] = None
    pump_ueV: Optional[float] = None
    pump_over_g: Optional[float] = None
    temperature_K: Optional[float] = None

    @model_validator(mode="after")
    def _check_keys(self) -> "SystemSection":
        for name in ENERGY_KEYS:
            if getattr(self, f"{name}_ueV") is not None and getattr(self, f"{name}_over_g") is not None:
                raise ValueError(f"give either {name}_ueV or {name}_over_g, not both")
        if self.energy("gamma") is None:
            raise ValueError("gamma_ueV or gamma_over_g is required")
        if self.energy("kappa") is not None and self.energy("kappa_out") is not None:
            raise ValueError("give either the total kappa or kappa_out, not both")
        if self.temperature_K is not None and self.energy("gamma_star") is not None:
            raise ValueError("give either temperature_K or gamma_star, not both")
        return self

    def energy(self, name: str) -> Optional[float]:
        """Absolute value in μeV, resolving the _over_g spelling."""
        ratio = getattr(self, f"{name}_over_g")
        if ratio is not None:
            return ratio * self.g_ueV
        return getattr(self, f"{name}_ueV")


class GeometrySection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    d_um: float
    V_um3: float
    R_l: float = 0.99
    R_r: float = 0.99
    alpha: float = 0.0
    M_debye: float = 30.0
    omega_qd_eV: float = 1.3


class DephasingSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    table: Optional[str] = None  # CSV path, None = built-in InGaAs
    mode: Literal["nodes", "interp"] = "interp"
    anchor: bool = True


class HilbertSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_max: Optional[int] = Field(default=None, ge=1)
    initial_state: Literal["excited_vacuum", "ground_vacuum", "custom"] = "excited_vacuum"
    populations: Optional[list[float]] = None
    t_max_hbar_per_ueV: float = Field(default=1.0, gt=0)
    t_points: int = Field(default=501, ge=2)

    @field_validator("populations", mode="before")
    @classmethod
    def _split_populations(cls, value):
        return _split_list(value)

    @model_validator(mode="after")
    def _check_custom(self) -> "HilbertSection":
        if self.initial_state == "custom" and not self.populations:
            raise ValueError("initial_state = custom needs populations")
        return self


class SweepSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variable: Optional[str] = None
    min: Optional[float] = None
    max: Optional[float] = None
    count: int = Field(default=50, ge=2)
    spacing: Literal["linear", "log"] = "linear"
    outputs: Optional[list[str]] = None
    variant_key: Optional[str] = None
    variant_values: list[float] = []

    @field_validator("outputs", "variant_values", mode="before")
    @classmethod
    def _split_lists(cls, value):
        return _split_list(value)
