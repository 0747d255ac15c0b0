"""
ConfigRepository - problem configuration INI files.

Reads the [system], [geometry], [dephasing], [hilbert] and [sweep] sections,
validates each with its schema and resolves derived values (_over_g keys,
total κ, γ* from temperature_K). Every failure surfaces as ConfigError.
"""

import configparser
import io
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, ValidationError

from app.models.dephasing import DephasingTable
from app.models.geometry import CavityGeometry
from app.models.params import SystemParams
from app.repositories.dephasing_repository import DephasingTableError, DephasingTableRepository
from app.schemas.config_file import (
    DephasingSection,
    GeometrySection,
    HilbertSection,
    SweepSection,
    SystemSection,
)
from app.services.dephasing_service import DephasingError, DephasingService

SECTIONS = ("system", "geometry", "dephasing", "hilbert", "sweep")


class ConfigError(Exception):
    """Raised when a configuration file is missing, malformed or inconsistent."""
    pass


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error["loc"])
    message = error["msg"].removeprefix("Value error, ")
    return f"{location}: {message}" if location else message


class ProblemConfig(BaseModel):
    """Validated sections plus the dephasing table they refer to."""

    model_config = ConfigDict(frozen=True)

    source: str
    system: Optional[SystemSection] = None
    geometry: Optional[GeometrySection] = None
    dephasing: DephasingSection = DephasingSection()
    hilbert: HilbertSection = HilbertSection()
    sweep: SweepSection = SweepSection()
    table: DephasingTable
    provenance: str = ""


class ConfigRepository:
    def __init__(self, table_repository: Optional[DephasingTableRepository] = None):
        self.table_repository = table_repository or DephasingTableRepository()

    def _parser(self) -> configparser.ConfigParser:
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str  # keys are case-sensitive (V_um3, R_l, ...)
        return parser

    def load(
        self,
        path: str | Path,
        mode: Optional[str] = None,
        table_path: Optional[str | Path] = None,
    ) -> ProblemConfig:
        """Parse and validate ``path``; ``mode``/``table_path`` override [dephasing]."""
        path = Path(path)
        parser = self._parser()
        try:
            with path.open(encoding="utf-8") as fh:
                parser.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except configparser.Error as exc:
            raise ConfigError(f"{path}: {exc}") from exc

        unknown = [name for name in parser.sections() if name not in SECTIONS]
        if unknown:
            raise ConfigError(f"{path}: unknown section [{unknown[0]}]")

        # CLI overrides land in the parser so the provenance echoes them
        if (mode is not None or table_path is not None) and not parser.has_section("dephasing"):
            parser.add_section("dephasing")
        if mode is not None:
            parser["dephasing"]["mode"] = mode
        if table_path is not None:
            parser["dephasing"]["table"] = str(Path(table_path).resolve())
        elif parser.has_option("dephasing", "table"):
            table_file = Path(parser["dephasing"]["table"])
            if not table_file.is_absolute():
                table_file = (path.parent / table_file).resolve()
            parser["dephasing"]["table"] = str(table_file)

        sections = {}
        schemas = {
            "system": SystemSection,
            "geometry": GeometrySection,
            "dephasing": DephasingSection,
            "hilbert": HilbertSection,
            "sweep": SweepSection,
        }
        for name, schema in schemas.items():
            if not parser.has_section(name):
                continue
            try:
                sections[name] = schema.model_validate(dict(parser[name]))
            except ValidationError as exc:
                raise ConfigError(f"{path} [{name}] {_first_error(exc)}") from exc

        dephasing = sections.get("dephasing", DephasingSection())
        table = self._table(dephasing)

        buffer = io.StringIO()
        parser.write(buffer)
        return ProblemConfig(
            source=str(path),
            table=table,
            provenance=buffer.getvalue().strip(),
            **sections,
        )

    def _table(self, dephasing: DephasingSection) -> DephasingTable:
        if dephasing.table is None:
            table = DephasingService().builtin_ingaas()
            return table.model_copy(update={"anchor": dephasing.anchor})
        try:
            return self.table_repository.load(dephasing.table, anchor=dephasing.anchor)
        except DephasingTableError as exc:
            raise ConfigError(str(exc)) from exc

    def system_params(self, config: ProblemConfig, allow_lossless: bool = False) -> SystemParams:
        """Resolve [system] into SystemParams (γ* from the table when temperature_K is set)."""
        section = config.system
        if section is None:
            raise ConfigError(f"{config.source}: missing [system] section")

        gamma_star = section.energy("gamma_star") or 0.0
        if section.temperature_K is not None:
            try:
                gamma_star = DephasingService().gamma_star_at(config.table, section.temperature_K)
            except DephasingError as exc:
                raise ConfigError(f"{config.source} [system] temperature_K: {exc}") from exc

        kappa_in = section.energy("kappa_in") or 0.0
        total = section.energy("kappa")
        kappa_out = total - kappa_in if total is not None else section.energy("kappa_out") or 0.0

        fields = {
            "g": section.g_ueV,
            "gamma": section.energy("gamma"),
            "gamma_star": gamma_star,
            "kappa_in": kappa_in,
            "kappa_out": kappa_out,
            "delta": section.energy("delta") or 0.0,
            "pump": section.energy("pump") or 0.0,
        }
        try:
            if allow_lossless:
                return SystemParams.lossless_allowed(**fields)
            return SystemParams(**fields)
        except ValidationError as exc:
            raise ConfigError(f"{config.source} [system] {_first_error(exc)}") from exc

    def cavity_geometry(self, config: ProblemConfig) -> Optional[CavityGeometry]:
        section = config.geometry
        if section is None:
            return None
        try:
            return CavityGeometry(
                d=section.d_um,
                V=section.V_um3,
                R_l=section.R_l,
                R_r=section.R_r,
                alpha=section.alpha,
                M=section.M_debye,
                omega_qd=section.omega_qd_eV,
            )
        except ValidationError as exc:
            raise ConfigError(f"{config.source} [geometry] {_first_error(exc)}") from exc
