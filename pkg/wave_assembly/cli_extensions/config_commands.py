"""CLI commands for inspecting run configurations."""

import argparse

from wave_assembly.core import ValidationError
from wave_assembly.output import MessageType, VerbosityLevel, message

from .common import common_arguments, prepare_run, resolve_run_config


class ConfigCommands:
    """Manages configuration-related CLI commands."""

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        """Add config subcommands to the argument parser.

        Args:
            subparsers: The subparsers object to add commands to
        """
        config_parser = subparsers.add_parser("config", help="Inspect run configurations")
        config_subparsers = config_parser.add_subparsers(dest="config_command", help="Configuration commands")

        # config show
        config_subparsers.add_parser(
            "show", parents=[common_arguments()], help="Print the fully resolved configuration as YAML"
        )

        # config validate
        config_subparsers.add_parser(
            "validate", parents=[common_arguments()], help="Check a configuration and its wave setup"
        )

    @staticmethod
    def process_cli_command(args: argparse.Namespace) -> None:
        """Process config CLI commands.

        Args:
            args: Parsed command-line arguments
        """
        if args.config_command == "show":
            ConfigCommands.show(args)
        elif args.config_command == "validate":
            ConfigCommands.validate(args)
        else:
            raise ValidationError("no config subcommand specified; available commands: show, validate")

    @staticmethod
    def show(args: argparse.Namespace) -> None:
        """Echo the resolved document; it parses back to the same configuration."""
        config = resolve_run_config(args)
        message(config.dump().rstrip("\n"))

    @staticmethod
    def validate(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        source = args.config or "default configuration"
        message(
            f"{source}: {run.dimension}-D, {run.wave.count} wave pairs, wavelength {run.wave.wavelength:.6e} m",
            MessageType.INFO,
            VerbosityLevel.VERBOSE,
        )
        message(f"{source} is valid", MessageType.SUCCESS)
