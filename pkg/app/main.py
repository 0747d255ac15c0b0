"""
Entry point del CLI
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from app.controllers import dynamics_controller, sweeps_controller, validate_controller
from app.controllers.common import common_arguments
from app.core.config import get_settings
from app.core.logging_config import setup_logging
from app.models.lindblad import InvalidDensityMatrixError
from app.repositories.config_repository import ConfigError
from app.repositories.results_repository import ResultsError
from app.services.lindblad_service import LindbladError
from app.services.sweep_service import SweepConfigError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdcav",
        description="Quantum-dot / cavity single-photon source simulator",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parent = common_arguments()

    # Subcomandos
    sweeps_controller.register(subparsers, parent)
    dynamics_controller.register(subparsers, parent)
    validate_controller.register(subparsers, parent)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()

    try:
        setup_logging(args.log_level or settings.log_level)
    except ValueError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return args.handler(args)
    except (ConfigError, SweepConfigError, ResultsError) as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (LindbladError, InvalidDensityMatrixError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
