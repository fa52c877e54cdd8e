import argparse
import logging
import sys
from typing import List, Optional

import tomli
from pydantic import ValidationError as PydanticValidationError

from .api import COMMANDS
from .api.commands import DET_ENGINES
from .config import Settings
from .core.exceptions import EXIT_INVALID_INPUT
from .core.suite import MODES, SUITES

logger = logging.getLogger(__name__)


def create_parser() -> argparse.ArgumentParser:
    """Build the command line parser with one subcommand per operation"""
    parser = argparse.ArgumentParser(
        prog="reprodet",
        description="Exact verification of bordered kernel determinant identities"
    )
    parser.add_argument('--config', '-c', help='Path to config file')
    parser.add_argument('--debug', '-d', action='store_true', help='Enable debug logging')
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="Generate a random valid instance file")
    gen.add_argument('--mode', choices=MODES, default="general", help='Instance type')
    gen.add_argument('--n', type=int, required=True, help='Number of base pairs')
    gen.add_argument('--seed', type=int, default=0, help='Generator seed')
    gen.add_argument('--range', type=int, help='Draw integers from [-range, range]')
    gen.add_argument('--field', default="rational", help="'rational' or 'prime:P'")
    gen.add_argument('--output', '-o', help='Output file (stdout when omitted)')

    verify = sub.add_parser("verify", help="Run an identity suite on an instance file")
    verify.add_argument('file', help='Instance file')
    verify.add_argument('--suite', choices=SUITES, default="all", help='Identity suite')
    verify.add_argument('--primes', type=int, help='Random prime fields to replay over')

    det = sub.add_parser("det", help="Print the kernel determinant D_{n+1} of an instance")
    det.add_argument('file', help='Instance file')
    det.add_argument('--engine', choices=DET_ENGINES, default="exact", help='Determinant engine')

    bench = sub.add_parser("bench", help="Time the determinant engines")
    bench.add_argument('--sizes', help='Comma-separated system sizes n, e.g. 4,6,8')
    bench.add_argument('--reps', type=int, help='Repetitions per engine')
    bench.add_argument('--seed', type=int, help='Seed of the instance set')
    bench.add_argument('--json', help='Also write the table as JSON to this file')

    batch = sub.add_parser("batch", help="Verify many generated instances from a master seed")
    batch.add_argument('--mode', choices=MODES, default="general", help='Instance type')
    batch.add_argument('--n', type=int, required=True, help='Number of base pairs')
    batch.add_argument('--seed', type=int, default=0, help='Master seed')
    batch.add_argument('--range', type=int, help='Draw integers from [-range, range]')
    batch.add_argument('--trials', type=int, default=10, help='Number of instances')
    batch.add_argument('--suite', choices=SUITES, default="all", help='Identity suite')
    batch.add_argument('--primes', type=int, help='Random prime fields to replay over')
    batch.add_argument('--jobs', type=int, help='Worker processes')
    return parser


def configure_logging(settings: Settings) -> None:
    level = logging.DEBUG if settings.logging.debug else getattr(logging, settings.logging.level)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, load settings and run one command; returns the exit code"""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on usage errors, matching the invalid-input code
        return int(e.code or 0)

    try:
        settings = Settings.load(config_path=args.config)
        if args.debug:
            settings.logging.debug = True
        configure_logging(settings)
    except (PydanticValidationError, tomli.TOMLDecodeError, ValueError, TypeError) as e:
        print(f"Invalid configuration: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    logger.info(f"Running '{args.command}'")
    code = COMMANDS[args.command](args, settings)
    logger.info(f"'{args.command}' finished with exit code {code}")
    return code
