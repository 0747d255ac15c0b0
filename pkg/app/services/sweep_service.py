"""
SweepService - evaluates a SweepSpec point by point.

Each point applies the variant override first, then the swept variable, then
evaluates the requested outputs. Points whose parameters break an invariant
(κ_out < 0 mid-sweep, κ_in > κ from geometry, ...) are skipped and counted.
Rows keep the sweep order whatever the number of workers.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from app.core.config import Settings, get_settings
from app.models.geometry import CavityGeometry
from app.models.params import InvalidParametersError, SystemParams
from app.models.sweep import (
    GEOMETRY_VARIANT_KEYS,
    OUTPUT_COLUMNS,
    VARIABLE_COLUMNS,
    SweepResult,
    SweepSpec,
)
from app.services.dephasing_service import DephasingService, TemperatureOutOfRangeError
from app.services.geometry_service import GeometryError, GeometryService
from app.services.params_service import system_from_geometry, validate
from app.services.rates_service import RatesError, RatesService

logger = logging.getLogger(__name__)

UEV_PER_EV = 1e6
GEOMETRY_OUTPUTS = ("kappa", "kappa_in", "g")


class SweepError(Exception):
    """Base exception for sweep errors."""
    pass


class SweepConfigError(SweepError):
    """Raised when the sweep as a whole cannot run (e.g. T range beyond the table)."""
    pass


class SweepService:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.dephasing = DephasingService()
        self.geometry = GeometryService()
        self.rates = RatesService()

    # ============================================
    # GRID
    # ============================================

    def sweep_values(self, spec: SweepSpec) -> np.ndarray:
        """Values of the swept variable; T sweeps in nodes mode use the table samples."""
        if spec.variable == "T":
            if spec.range.min < 0 or spec.range.max > spec.table.t_max:
                raise SweepConfigError(
                    f"T range [{spec.range.min:g}, {spec.range.max:g}] K outside the "
                    f"dephasing table (0..{spec.table.t_max:g} K)"
                )
            if spec.mode == "nodes":
                nodes = self.dephasing.node_temperatures(
                    spec.table, spec.range.min, spec.range.max
                )
                if not nodes:
                    raise SweepConfigError("no table node inside the requested T range")
                return np.array(nodes)
        return spec.range.values()

    def columns(self, spec: SweepSpec) -> list[str]:
        names = [VARIABLE_COLUMNS[spec.variable]]
        if spec.variable == "T":
            names.append("gamma_star_ueV")
        for output in self._outputs(spec):
            for label in self._variant_labels(spec):
                names.append(OUTPUT_COLUMNS[output] + label)
        if self._flags_geometry(spec):
            for label in self._variant_labels(spec):
                names.append("unphysical" + label)
        return names

    def _outputs(self, spec: SweepSpec) -> list[str]:
        # The swept quantity is already the first column
        return [o for o in spec.outputs if OUTPUT_COLUMNS[o] != VARIABLE_COLUMNS[spec.variable]]

    def _variant_labels(self, spec: SweepSpec) -> list[str]:
        if spec.variant_key is None:
            return [""]
        return [f"[{spec.variant_key}={value:g}]" for value in spec.variant_values]

    def _flags_geometry(self, spec: SweepSpec) -> bool:
        """Geometry sweeps report κ_in > κ in a flag column instead of dropping rows."""
        return spec.geometry is not None and {"kappa", "kappa_in"} <= set(spec.outputs)

    # ============================================
    # POINT EVALUATION
    # ============================================

    def _apply_variant(
        self,
        spec: SweepSpec,
        params: Optional[SystemParams],
        geometry: Optional[CavityGeometry],
        value: Optional[float],
    ) -> tuple[Optional[SystemParams], Optional[CavityGeometry]]:
        if spec.variant_key is None or value is None:
            return params, geometry

        key = spec.variant_key.removesuffix("_over_g")
        if key in GEOMETRY_VARIANT_KEYS:
            assert geometry is not None
            return params, CavityGeometry(**{**geometry.model_dump(), key: value})

        assert params is not None and spec.system is not None
        if spec.variant_key.endswith("_over_g"):
            value = value * spec.system.g

        if key == "T":
            return params.model_copy(update={
                "gamma_star": self.dephasing.gamma_star_at(spec.table, value)
            }), geometry
        if key == "kappa":
            return params.model_copy(update={"kappa_out": value - params.kappa_in}), geometry
        return params.model_copy(update={key: value}), geometry

    def _apply_variable(
        self,
        spec: SweepSpec,
        params: Optional[SystemParams],
        geometry: Optional[CavityGeometry],
        x: float,
    ) -> tuple[Optional[SystemParams], Optional[CavityGeometry]]:
        if spec.variable == "V":
            assert geometry is not None
            geometry = CavityGeometry(**{**geometry.model_dump(), "V": x})
            if self._needs_rate_model(spec):
                assert params is not None
                params = system_from_geometry(geometry, params)
            return params, geometry

        assert params is not None
        match spec.variable:
            case "kappa":
                params = params.model_copy(update={"kappa_out": x - params.kappa_in})
            case "T":
                params = params.model_copy(update={
                    "gamma_star": self.dephasing.gamma_star_at(spec.table, x)
                })
            case other:
                params = params.model_copy(update={other: x})
        return params, geometry

    def _needs_rate_model(self, spec: SweepSpec) -> bool:
        return any(o not in GEOMETRY_OUTPUTS for o in spec.outputs)

    def _omega_qd_ueV(self, geometry: Optional[CavityGeometry]) -> float:
        if geometry is not None:
            return geometry.omega_qd * UEV_PER_EV
        return self.settings.default_omega_qd_ev * UEV_PER_EV

    def _evaluate(
        self,
        spec: SweepSpec,
        params: Optional[SystemParams],
        geometry: Optional[CavityGeometry],
    ) -> dict[str, float]:
        values: dict[str, float] = {}
        if self._needs_rate_model(spec):
            params = validate(params)

        for output in spec.outputs:
            match output:
                case "R":
                    values[output] = self.rates.effective_rate(params)
                case "efficiency":
                    values[output] = self.rates.efficiency(params)
                case "purcell":
                    values[output] = self.rates.purcell_factor(params)
                case "Q_eff":
                    omega_qd = self._omega_qd_ueV(geometry)
                    values[output] = self.rates.quality_factors(
                        params, omega_qd, omega_qd - params.delta
                    ).Q_eff
                case "kappa":
                    values[output] = (
                        self.geometry.total_loss(geometry) if geometry else params.kappa
                    )
                case "kappa_in":
                    values[output] = (
                        self.geometry.internal_loss(geometry) if geometry else params.kappa_in
                    )
                case "g":
                    values[output] = (
                        self.geometry.coupling_strength(geometry) if geometry else params.g
                    )
        if self._flags_geometry(spec):
            values["unphysical"] = float(values["kappa_in"] > values["kappa"])
        if self._needs_rate_model(spec):
            values["_bad_cavity"] = self.rates.bad_cavity_ratio(params)
        return values

    def _row(self, spec: SweepSpec, x: float) -> Optional[tuple[list[float], bool, int]]:
        """One table row (with Purcell-regime and κ_in > κ flags), or None when any variant fails."""
        variant_values: list[Optional[float]] = (
            list(spec.variant_values) if spec.variant_key else [None]
        )
        row = [float(x)]
        results = []
        try:
            if spec.variable == "T":
                row.append(self.dephasing.gamma_star_at(spec.table, x))
            for value in variant_values:
                params, geometry = self._apply_variant(spec, spec.system, spec.geometry, value)
                params, geometry = self._apply_variable(spec, params, geometry, x)
                results.append(self._evaluate(spec, params, geometry))
        except (
            InvalidParametersError,
            GeometryError,
            TemperatureOutOfRangeError,
            RatesError,
            ValueError,
        ) as exc:
            logger.debug("Skipping point %s=%g: %s", spec.variable, x, exc)
            return None

        for output in self._outputs(spec):
            row.extend(result[output] for result in results)
        unphysical = 0
        if self._flags_geometry(spec):
            row.extend(result["unphysical"] for result in results)
            unphysical = sum(int(result["unphysical"]) for result in results)

        if not all(math.isfinite(v) for v in row):
            return None
        outside_purcell = any(
            result.get("_bad_cavity", 0.0) > self.settings.bad_cavity_ratio_limit
            for result in results
        )
        return row, outside_purcell, unphysical

    # ============================================
    # RUN
    # ============================================

    def run(self, spec: SweepSpec, provenance: str = "") -> SweepResult:
        xs = self.sweep_values(spec)
        columns = self.columns(spec)

        if self.settings.sweep_workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.sweep_workers) as pool:
                evaluated = list(pool.map(lambda x: self._row(spec, x), xs))
        else:
            evaluated = [self._row(spec, x) for x in xs]

        kept = [item for item in evaluated if item is not None]
        rows = [item[0] for item in kept]
        skipped = len(evaluated) - len(kept)
        outside_purcell = sum(1 for item in kept if item[1])
        unphysical = sum(item[2] for item in kept)

        if skipped:
            logger.warning("Omitted %d of %d sweep points (invalid parameters)", skipped, len(xs))
        if outside_purcell:
            logger.warning(
                "%d sweep points have R/kappa above %g: outside the Purcell regime",
                outside_purcell, self.settings.bad_cavity_ratio_limit,
            )
        if unphysical:
            logger.warning("%d geometry points have kappa_in > kappa", unphysical)

        table = np.array(rows, dtype=float).reshape(len(rows), len(columns))
        return SweepResult(columns=columns, rows=table, provenance=provenance, skipped=skipped)
