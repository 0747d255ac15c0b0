"""
Controlador de validación - acceptance suite
"""

import argparse
from typing import Optional

from app.controllers.common import common_arguments, load_config
from app.core.config import get_settings
from app.repositories.config_repository import ConfigError
from app.repositories.dephasing_repository import DephasingTableError, DephasingTableRepository
from app.services.validation_service import ValidationService


def run_validate(args: argparse.Namespace) -> int:
    """Print one CHECK line per acceptance check; exit 1 if any fails."""
    table = None
    config = load_config(args, required=False)
    if config is not None:
        table = config.table
    elif args.table is not None:
        try:
            table = DephasingTableRepository().load(args.table)
        except DephasingTableError as exc:
            raise ConfigError(str(exc)) from exc

    results = ValidationService(get_settings(), table=table).run_all()
    for result in results:
        print(result.line())

    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"[FAIL] {len(failed)} of {len(results)} checks failed: {', '.join(failed)}")
        return 1
    print(f"[OK] all {len(results)} checks passed")
    return 0


def register(subparsers, parent: Optional[argparse.ArgumentParser] = None) -> None:
    parser = subparsers.add_parser(
        "validate", parents=[parent or common_arguments()], help="run the acceptance checks"
    )
    parser.set_defaults(handler=run_validate)
