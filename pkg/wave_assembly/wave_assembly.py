#!/usr/bin/env python

"""Simulate and compare particle assembly in superposed ultrasound plane waves."""

import argparse
import sys

from wave_assembly.cli_extensions import (
    AnalysisCommands,
    CompareCommands,
    ConfigCommands,
    FieldCommands,
    MinimaCommands,
    PresetCommands,
)
from wave_assembly.core import MinimaError, ValidationError, create_default_preset_registry
from wave_assembly.output import MessageType, VerbosityLevel, get_output, message

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wave-assembly",
        description="Compute acoustic radiation potentials, trap sites and image agreement for plane-wave setups",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Increase verbosity (-v, -vv, -vvv)")
    parser.add_argument("--no-color", action="store_true", help="Disable colored output")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Add CLI arguments from all command extensions
    FieldCommands.add_cli_arguments(subparsers)
    MinimaCommands.add_cli_arguments(subparsers)
    AnalysisCommands.add_cli_arguments(subparsers)
    CompareCommands.add_cli_arguments(subparsers)
    PresetCommands.add_cli_arguments(subparsers)
    ConfigCommands.add_cli_arguments(subparsers)
    return parser


def dispatch(args: argparse.Namespace) -> None:
    if args.command == "field":
        FieldCommands.process_cli_command(args)
    elif args.command in ("minima", "relax"):
        MinimaCommands.process_cli_command(args)
    elif args.command in ("symmetry", "classify"):
        AnalysisCommands.process_cli_command(args)
    elif args.command == "compare":
        CompareCommands.process_cli_command(args)
    elif args.command == "presets":
        PresetCommands(create_default_preset_registry()).process_cli_command(args)
    elif args.command == "config":
        ConfigCommands.process_cli_command(args)


def run(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit code.

    0 on success, 1 when an input or configuration is invalid, 2 when a
    computation or file operation fails.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return EXIT_OK if not e.code else EXIT_VALIDATION

    # Configure output system
    output_mgr = get_output()
    output_mgr.verbosity = args.verbose
    output_mgr.use_color = not args.no_color and sys.stdout.isatty()

    message(f"Verbosity level: {args.verbose}", MessageType.DEBUG, VerbosityLevel.DEBUG)
    message(f"Command: {args.command}", MessageType.DEBUG, VerbosityLevel.DEBUG)

    # If no command specified, show help
    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        dispatch(args)
    except ValidationError as e:
        message(str(e), MessageType.ERROR, VerbosityLevel.ALWAYS)
        return EXIT_VALIDATION
    except (MinimaError, OSError) as e:
        message(str(e), MessageType.ERROR, VerbosityLevel.ALWAYS)
        return EXIT_RUNTIME
    except Exception as e:
        message(f"{type(e).__name__}: {e}", MessageType.ERROR, VerbosityLevel.ALWAYS)
        if args.verbose >= VerbosityLevel.DEBUG:
            raise
        return EXIT_RUNTIME
    return EXIT_OK


def main() -> None:
    """Main entry point for the wave-assembly CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
