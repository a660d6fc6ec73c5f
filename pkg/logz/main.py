"""
Command-line entry point for logz.

Subcommands:
- estimate: one run from a JSON config, report JSON plus stage CSV
- bench: sweep over methods and problem sizes, one CSV row per run
- oracle: closed forms and quadrature
- sample: single-chain trace CSV
- hardgen / hardverify: hard instances

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 acceptance-check failure.

Example:
    >>> python -m logz estimate --config run.json --output-dir out
"""

import argparse
import logging
import sys
from typing import List, Optional

from logz import __version__
from logz.commands import COMMANDS
from logz.core.config import get_settings
from logz.core.exceptions import EXIT_CONFIG_ERROR, LogZException
from logz.core.logging_config import setup_logging
from logz.utils.debug import log_error

logger = logging.getLogger("logz.cli")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with global flags and one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="logz",
        description="Normalizing-constant estimation for strongly log-concave targets",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Console log level (default: LOG_LEVEL setting)",
    )
    parser.add_argument("--threads", type=_positive_int, default=None, help="Worker threads")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, configure logging and dispatch.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG_ERROR if e.code else 0

    try:
        settings = get_settings()
    except Exception as e:
        print(f"Invalid settings: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    setup_logging(args.log_level or settings.LOG_LEVEL, settings.LOG_FILE)
    logger.debug(f"{settings.APP_NAME} {settings.APP_VERSION}: {args.command}")

    try:
        return args.handler(args)
    except LogZException as e:
        log_error(e, context={"command": args.command})
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130


def run() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
