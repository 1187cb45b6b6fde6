"""Main entry point for the entangled-source designer."""

import argparse
import os
import sys
import time
from typing import List, Optional

from src import __version__
from src.data_processors import RunManifest
from src.pipeline import COMMANDS, DesignRun, run_command
from src.utils.config import parse_config
from src.utils.exceptions import QPMError
from src.utils.logging import setup_logging


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Returns:
        argparse.Namespace: Parsed arguments
    """
    parser = argparse.ArgumentParser(
        description="Design customized-poling lithium niobate crystals and analyse their photon pairs"
    )

    parser.add_argument("command", choices=list(COMMANDS), help="Step to run")

    parser.add_argument(
        "--config",
        type=str,
        help="Path to YAML/JSON run config (default: from CONFIG_PATH env var)",
    )

    parser.add_argument(
        "--out",
        type=str,
        help="Output directory (default: from OUTPUT_DIRECTORY env var)",
    )

    parser.add_argument("--seed", type=int, help="Base seed of the tolerance study")

    parser.add_argument("--grid-size", type=int, help="Spectral grid size M (power of two)")

    parser.add_argument("--span-nm", type=float, help="Spectral grid span in nm")

    parser.add_argument(
        "--sequence",
        type=str,
        help="Analyse an existing sequence file instead of designing one",
    )

    parser.add_argument(
        "--ideal",
        action="store_true",
        help="Analyse the analytic target PMF instead of the designed crystal",
    )

    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Log level (default: from LOG_LEVEL env var)",
    )

    return parser.parse_args(argv)


def setup_environment(args: argparse.Namespace) -> None:
    """
    Set up environment variables from command line arguments.

    Args:
        args (argparse.Namespace): Command line arguments
    """
    if args.config:
        os.environ["CONFIG_PATH"] = args.config

    if args.out:
        os.environ["OUTPUT_DIRECTORY"] = args.out

    if args.log_level:
        os.environ["LOG_LEVEL"] = args.log_level


def report_error(error: QPMError) -> None:
    """Write the single machine-parsable error line to stderr."""
    message = str(error).replace('"', "'").replace("\n", " ")
    print(f'error={error.kind} message="{message}"', file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the application.

    Returns:
        int: Exit code
    """
    start_time = time.time()

    # Parse command line arguments
    args = parse_args(argv)

    # Set up environment variables
    setup_environment(args)

    # Set up logging
    try:
        logger = setup_logging()
    except QPMError as e:
        report_error(e)
        return e.exit_code

    try:
        config = parse_config(os.getenv("CONFIG_PATH"))

        overrides = {}
        if args.seed is not None:
            overrides["tolerance"] = {"seed": args.seed}
        grid = {}
        if args.grid_size is not None:
            grid["size"] = args.grid_size
        if args.span_nm is not None:
            grid["span_nm"] = args.span_nm
        if grid:
            overrides["grid"] = grid
        if overrides:
            config = config.with_overrides(**overrides)

        output_dir = os.getenv("OUTPUT_DIRECTORY") or config.output.directory
        manifest = RunManifest(output_dir, config.source, __version__)

        with manifest.lock():
            run = DesignRun(
                config,
                output_dir=output_dir,
                sequence_path=args.sequence,
                ideal=args.ideal,
                manifest=manifest,
            )
            run_command(run, args.command)
            manifest.write()

    except QPMError as e:
        logger.error(str(e))
        report_error(e)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {str(e)}")
        print(f'error=internal message="{str(e)}"', file=sys.stderr)
        return 1

    logger.info(f"Finished '{args.command}' in {time.time() - start_time:.2f} seconds")
    return 0


if __name__ == "__main__":
    sys.exit(main())
