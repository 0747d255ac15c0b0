"""
Shared CLI plumbing - common flags, config loading and output handling.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional

from app.repositories.config_repository import ConfigError, ConfigRepository, ProblemConfig


def common_arguments() -> argparse.ArgumentParser:
    """Parent parser with the flags every subcommand accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", type=Path, help="problem configuration (INI)")
    parser.add_argument("--out", type=Path, help="output CSV path (default: stdout)")
    parser.add_argument("--svg", action="store_true", help="also write <out>.svg")
    parser.add_argument(
        "--mode", choices=("nodes", "interp"), help="temperature sampling (overrides [dephasing])"
    )
    parser.add_argument("--table", type=Path, help="dephasing CSV (overrides [dephasing])")
    parser.add_argument("--log-level", help="logging level (default: Settings.log_level)")
    return parser


def load_config(args: argparse.Namespace, required: bool = True) -> Optional[ProblemConfig]:
    if args.config is None:
        if required:
            raise ConfigError(f"{args.command} needs --config")
        return None
    return ConfigRepository().load(args.config, mode=args.mode, table_path=args.table)


def check_svg(args: argparse.Namespace) -> None:
    if args.svg and args.out is None:
        raise ConfigError("--svg needs --out")


def report(args: argparse.Namespace, message: str) -> None:
    """Status line: stdout when the CSV goes to a file, stderr otherwise."""
    stream = sys.stdout if args.out is not None else sys.stderr
    print(message, file=stream)
