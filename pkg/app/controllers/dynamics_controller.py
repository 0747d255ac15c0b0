"""
Controlador de dinámica - master-equation trajectories
"""

import argparse
import sys
from typing import Optional

import numpy as np

from app.controllers.common import check_svg, common_arguments, load_config, report
from app.core.config import get_settings
from app.models.lindblad import DensityMatrix, HilbertConfig, InvalidDensityMatrixError
from app.repositories.config_repository import ConfigError, ConfigRepository, ProblemConfig
from app.repositories.results_repository import ResultsRepository
from app.services.lindblad_service import LindbladService
from app.utils.svg_plot import line_plot, svg_path_for


def initial_state(config: ProblemConfig, hilbert: HilbertConfig) -> DensityMatrix:
    section = config.hilbert
    try:
        match section.initial_state:
            case "excited_vacuum":
                return DensityMatrix.basis_state(hilbert, "e", 0)
            case "ground_vacuum":
                return DensityMatrix.basis_state(hilbert, "g", 0)
            case _:
                rho = DensityMatrix.diagonal(hilbert, section.populations or [])
                rho.check()
                return rho
    except InvalidDensityMatrixError as exc:
        raise ConfigError(f"{config.source} [hilbert] {exc}") from exc


def run_dynamics(args: argparse.Namespace) -> int:
    check_svg(args)
    config = load_config(args)
    settings = get_settings()
    params = ConfigRepository().system_params(config, allow_lossless=True)
    hilbert = HilbertConfig(n_max=config.hilbert.n_max or settings.default_n_max)
    if args.fit and not (params.gamma > 0 and params.kappa > 0):
        raise ConfigError("--fit needs gamma > 0 and kappa > 0")

    rho0 = initial_state(config, hilbert)
    times = np.linspace(0.0, config.hilbert.t_max_hbar_per_ueV, config.hilbert.t_points)

    service = LindbladService(settings)
    trajectory = service.evolve(hilbert, params, rho0, times)
    series = service.expectations(trajectory)

    repository = ResultsRepository(precision=settings.csv_precision)
    provenance = f"; qdcav dynamics\n{config.provenance}"
    text = repository.save_trajectory(trajectory, series, args.out, provenance=provenance)
    if args.out is None:
        sys.stdout.write(text)
    else:
        report(args, f"[OK] wrote {len(times)} time points to {args.out}")
        if args.svg:
            svg = svg_path_for(args.out)
            line_plot(
                times,
                {"n_e": series.n_e, "n_ph": series.n_ph},
                "t (hbar/ueV)",
                svg,
                y_label="population",
            )
            report(args, f"[OK] wrote {svg}")

    if args.fit:
        comparison = service.compare_with_rate_model(params, hilbert, times)
        report(
            args,
            f"[OK] decay fit {comparison.fitted_rate:.6g} ueV, gamma+R "
            f"{comparison.predicted_rate:.6g} ueV ({comparison.relative_error:.2%})",
        )
    return 0


def register(subparsers, parent: Optional[argparse.ArgumentParser] = None) -> None:
    parser = subparsers.add_parser(
        "dynamics",
        parents=[parent or common_arguments()],
        help="master-equation trajectory of <n_e> and <n_ph>",
    )
    parser.add_argument(
        "--fit", action="store_true", help="compare the n_e decay with gamma + R"
    )
    parser.set_defaults(handler=run_dynamics)
