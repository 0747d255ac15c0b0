"""
DephasingService - temperature → pure dephasing γ*(T).

Built on measured (T, γ*) samples. Between samples γ* is interpolated
linearly in (T, γ*); below the first sample it goes linearly to (0 K, 0 meV)
when the table's anchor is enabled. The kink near 100 K in the InGaAs data is
kept as-is, there is no phonon model behind it.
"""

from pathlib import Path

import numpy as np

from app.models.dephasing import DephasingSample, DephasingTable
from app.repositories.dephasing_repository import DephasingTableError, DephasingTableRepository

MEV_TO_UEV = 1000.0

# InGaAs QD, (T [K], γ* [meV])
INGAAS_SAMPLES: tuple[tuple[float, float], ...] = (
    (50.0, 0.04),
    (100.0, 0.22),
    (150.0, 3.0),
    (200.0, 4.0),
    (300.0, 6.0),
)


class DephasingError(Exception):
    """Base exception for dephasing service errors."""
    pass


class TemperatureOutOfRangeError(DephasingError):
    """Raised when T is negative or outside the table range."""
    pass


class DephasingService:
    def __init__(self, repository: DephasingTableRepository | None = None):
        self.repository = repository or DephasingTableRepository()

    def builtin_ingaas(self) -> DephasingTable:
        """Measured InGaAs table with the (0 K, 0 meV) anchor enabled."""
        return DephasingTable(
            samples=tuple(DephasingSample(T=T, gamma_star=gs) for T, gs in INGAAS_SAMPLES),
            anchor=True,
        )

    def gamma_star_at(self, table: DephasingTable, T: float) -> float:
        """γ*(T) in μeV, piecewise linear; exact at every sample."""
        if T < 0:
            raise TemperatureOutOfRangeError(f"negative temperature {T} K")
        if T > table.t_max:
            raise TemperatureOutOfRangeError(
                f"T = {T} K above the table range (max {table.t_max} K)"
            )

        temps = np.array(table.temperatures)
        values = np.array([s.gamma_star for s in table.samples])
        if T < temps[0]:
            if not table.anchor:
                raise TemperatureOutOfRangeError(
                    f"T = {T} K below the first sample ({temps[0]} K) and anchor disabled"
                )
            temps = np.concatenate(([0.0], temps))
            values = np.concatenate(([0.0], values))

        return float(np.interp(T, temps, values)) * MEV_TO_UEV

    def node_temperatures(self, table: DephasingTable, t_min: float, t_max: float) -> list[float]:
        """Sample temperatures inside [t_min, t_max] (nodes-only sweeps)."""
        return [T for T in table.temperatures if t_min <= T <= t_max]

    def load_table(self, path: str | Path) -> DephasingTable:
        return self.repository.load(path)

    def save_table(self, table: DephasingTable, path: str | Path) -> Path:
        return self.repository.save(table, path)


__all__ = [
    "DephasingError",
    "DephasingTableError",
    "TemperatureOutOfRangeError",
    "DephasingService",
]
