"""
Controlador de barridos - geometry, efficiency, transfer-rate y purcell sweeps
"""

import argparse
import sys
from typing import Optional

from pydantic import BaseModel, ValidationError

from app.controllers.common import check_svg, common_arguments, load_config, report
from app.core.config import get_settings
from app.models.sweep import SweepRange, SweepResult, SweepSpec
from app.repositories.config_repository import ConfigError, ConfigRepository, ProblemConfig
from app.repositories.results_repository import ResultsRepository
from app.services.sweep_service import SweepService
from app.utils.svg_plot import line_plot, svg_path_for

DEFAULT_T_MIN = 10.0


class SweepCommand(BaseModel):
    """What a sweep subcommand accepts and produces by default."""

    name: str
    help: str
    variables: tuple[str, ...]
    default_variable: str
    default_outputs: tuple[str, ...]


COMMANDS = (
    SweepCommand(
        name="geometry-sweep",
        help="cavity losses and coupling versus mode volume",
        variables=("V",),
        default_variable="V",
        default_outputs=("kappa_in", "kappa", "g"),
    ),
    SweepCommand(
        name="efficiency-sweep",
        help="efficiency versus cavity loss or temperature",
        variables=("kappa", "kappa_in", "kappa_out", "T"),
        default_variable="kappa",
        default_outputs=("efficiency",),
    ),
    SweepCommand(
        name="transfer-rate-sweep",
        help="effective transfer rate R versus temperature",
        variables=("T",),
        default_variable="T",
        default_outputs=("R",),
    ),
    SweepCommand(
        name="purcell-sweep",
        help="generalized Purcell factor versus temperature",
        variables=("T",),
        default_variable="T",
        default_outputs=("purcell",),
    ),
)


def build_spec(command: SweepCommand, config: ProblemConfig) -> SweepSpec:
    """Turn the [sweep] section plus the resolved physics into a SweepSpec."""
    repository = ConfigRepository()
    section = config.sweep
    variable = section.variable or command.default_variable
    if variable not in command.variables:
        raise ConfigError(
            f"{command.name} sweeps one of {', '.join(command.variables)}, not '{variable}'"
        )

    sweep_min, sweep_max = section.min, section.max
    if variable == "T":
        sweep_min = DEFAULT_T_MIN if sweep_min is None else sweep_min
        sweep_max = config.table.t_max if sweep_max is None else sweep_max
    if sweep_min is None or sweep_max is None:
        raise ConfigError(f"{config.source} [sweep] min and max are required for {variable}")

    geometry = repository.cavity_geometry(config)
    system = repository.system_params(config) if config.system is not None else None
    try:
        return SweepSpec(
            variable=variable,
            range=SweepRange(
                min=sweep_min, max=sweep_max, count=section.count, spacing=section.spacing
            ),
            outputs=tuple(section.outputs or command.default_outputs),
            system=system,
            table=config.table,
            geometry=geometry,
            mode=config.dephasing.mode,
            variant_key=section.variant_key,
            variant_values=tuple(section.variant_values),
        )
    except ValidationError as exc:
        message = exc.errors()[0]["msg"].removeprefix("Value error, ")
        raise ConfigError(f"{config.source} [sweep] {message}") from exc


def plot_sweep(result: SweepResult, path, log_x: bool = False) -> None:
    skip = {"gamma_star_ueV"}
    series = {
        name: result.column(name)
        for name in result.columns[1:]
        if name not in skip and not name.startswith("unphysical")
    }
    line_plot(result.rows[:, 0], series, result.columns[0], path, log_x=log_x)


def run_sweep(args: argparse.Namespace, command: SweepCommand) -> int:
    check_svg(args)
    config = load_config(args)
    settings = get_settings()
    spec = build_spec(command, config)

    provenance = f"; qdcav {command.name}\n{config.provenance}"
    result = SweepService(settings).run(spec, provenance=provenance)

    repository = ResultsRepository(precision=settings.csv_precision)
    if args.out is None:
        sys.stdout.write(repository.render_sweep(result))
    else:
        repository.save_sweep(result, args.out)
        report(args, f"[OK] wrote {len(result.rows)} rows to {args.out}")
        if args.svg:
            svg = svg_path_for(args.out)
            plot_sweep(result, svg, log_x=spec.range.spacing == "log")
            report(args, f"[OK] wrote {svg}")
    if result.skipped:
        report(args, f"[WARN] {result.skipped} sweep points omitted")
    return 0


def _handler(command: SweepCommand):
    def handle(args: argparse.Namespace) -> int:
        return run_sweep(args, command)
    return handle


def register(subparsers, parent: Optional[argparse.ArgumentParser] = None) -> None:
    parent = parent or common_arguments()
    for command in COMMANDS:
        parser = subparsers.add_parser(command.name, parents=[parent], help=command.help)
        parser.set_defaults(handler=_handler(command))
