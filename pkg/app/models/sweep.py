"""
Sweep models - declarative parameter sweep and its tabular output.
"""

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.models.dephasing import DephasingTable
from app.models.geometry import CavityGeometry
from app.models.params import SystemParams


SweptVariable = Literal["V", "kappa", "kappa_in", "kappa_out", "T", "delta", "pump"]
OutputName = Literal["R", "efficiency", "purcell", "Q_eff", "kappa", "kappa_in", "g"]
Spacing = Literal["linear", "log"]
TemperatureMode = Literal["nodes", "interp"]

# Column header for each swept variable / output
VARIABLE_COLUMNS: dict[str, str] = {
    "V": "V_um3",
    "kappa": "kappa_ueV",
    "kappa_in": "kappa_in_ueV",
    "kappa_out": "kappa_out_ueV",
    "T": "T_K",
    "delta": "delta_ueV",
    "pump": "pump_ueV",
}

OUTPUT_COLUMNS: dict[str, str] = {
    "R": "R_ueV",
    "efficiency": "efficiency",
    "purcell": "F_star",
    "Q_eff": "Q_eff",
    "kappa": "kappa_ueV",
    "kappa_in": "kappa_in_ueV",
    "g": "g_ueV",
}

# Keys a variant may override (energies also accept the _over_g suffix)
ENERGY_VARIANT_KEYS = (
    "g", "gamma", "gamma_star", "kappa", "kappa_in", "kappa_out", "delta", "pump",
)
GEOMETRY_VARIANT_KEYS = ("alpha", "d", "omega_qd")


class SweepRange(BaseModel):
    model_config = ConfigDict(frozen=True)

    min: float
    max: float
    count: int = Field(..., ge=2)
    spacing: Spacing = "linear"

    @model_validator(mode="after")
    def _validate(self) -> "SweepRange":
        if not self.min < self.max:
            raise ValueError("sweep range needs min < max")
        if self.spacing == "log" and not self.min > 0:
            raise ValueError("log spacing requires min > 0")
        return self

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: SweptVariable
    range: SweepRange
    outputs: tuple[OutputName, ...]
    system: Optional[SystemParams] = None  # not needed for geometry-only outputs
    table: DephasingTable
    geometry: Optional[CavityGeometry] = None
    mode: TemperatureMode = "interp"
    variant_key: Optional[str] = None
    variant_values: tuple[float, ...] = ()

    @model_validator(mode="after")
    def _validate(self) -> "SweepSpec":
        if not self.outputs:
            raise ValueError("a sweep needs at least one output")
        if self.variable == "V" and self.geometry is None:
            raise ValueError("sweeping V requires a [geometry] section")
        needs_system = any(o not in ("kappa", "kappa_in", "g") for o in self.outputs)
        if self.system is None and (needs_system or self.variable != "V"):
            raise ValueError("this sweep requires a [system] section")
        if self.variant_key is not None:
            base = self.variant_key.removesuffix("_over_g")
            allowed = (*ENERGY_VARIANT_KEYS, *GEOMETRY_VARIANT_KEYS, "T")
            if base not in allowed:
                raise ValueError(f"unknown variant key '{self.variant_key}'")
            if base in (*ENERGY_VARIANT_KEYS, "T") and self.system is None:
                raise ValueError(f"variant '{base}' requires a [system] section")
            if base in GEOMETRY_VARIANT_KEYS and self.geometry is None:
                raise ValueError(f"variant '{base}' requires a [geometry] section")
            if self.variant_key.endswith("_over_g") and base not in ENERGY_VARIANT_KEYS:
                raise ValueError(f"'{self.variant_key}' is not an energy key")
            if not self.variant_values:
                raise ValueError("variant_key given without variant_values")
        return self


class SweepResult(BaseModel):
    """Row-major numeric table plus the provenance needed to re-run it."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    columns: list[str]
    rows: np.ndarray
    provenance: str = ""
    skipped: int = 0

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]
