"""Tests for cli_extensions/config_commands.py - Configuration CLI commands."""

import argparse

import pytest

from tests.helpers import parse_cli, write_config
from wave_assembly.cli_extensions import ConfigCommands
from wave_assembly.config import ConfigError, RunConfig, load_config, parse_config
from wave_assembly.core import ValidationError
from wave_assembly.output import set_verbosity


class TestConfigCommandsAddCliArguments:
    """Test cases for add_cli_arguments method."""

    def test_show_and_validate_accept_run_options(self):
        """Test that both subcommands take the shared run options."""
        parser = argparse.ArgumentParser()
        subparsers = parser.add_subparsers(dest="command")

        ConfigCommands.add_cli_arguments(subparsers)

        args = parser.parse_args(["config", "show", "--preset", "square", "--seed", "3"])
        assert args.config_command == "show"
        assert args.preset == "square"
        assert args.seed == 3
        assert parser.parse_args(["config", "validate"]).config_command == "validate"


class TestConfigCommandsProcessCliCommand:
    """Test cases for process_cli_command method."""

    def test_no_subcommand(self):
        """Test that a missing subcommand is a validation error."""
        with pytest.raises(ValidationError, match="show, validate"):
            ConfigCommands.process_cli_command(argparse.Namespace(config_command=None))

    def test_show_defaults(self, capsys):
        """Test that the default document parses back to the defaults."""
        ConfigCommands.process_cli_command(parse_cli("config", "show"))

        assert parse_config(capsys.readouterr().out) == RunConfig()

    def test_show_applies_overrides(self, tmp_path, capsys):
        """Test that command-line options override the file."""
        config = write_config(tmp_path / "run.yaml", "wave: {preset: octagon}\ngrid: {half_width: 3}\nseed: 5\n")

        ConfigCommands.process_cli_command(
            parse_cli("config", "show", "--config", config, "--preset", "hexagon", "--grid-res", "64")
        )

        shown = parse_config(capsys.readouterr().out)
        assert shown.preset == "hexagon"
        assert shown.grid.half_width == 3
        assert shown.grid.resolution == 64
        assert shown.seed == 5

    def test_show_round_trips_a_file(self, tmp_path, capsys):
        """Test that an explicit configuration is echoed faithfully."""
        text = (
            "wave:\n"
            "  wavevectors: [[1, 0], [0, 1]]\n"
            "  amplitudes: [[1, [0, 1]], [1, 1]]\n"
            "coefficients: {a: 0, B: 1}\n"
            "outputs: [minima_csv]\n"
        )
        config = write_config(tmp_path / "run.yaml", text)

        ConfigCommands.process_cli_command(parse_cli("config", "show", "--config", config))

        assert parse_config(capsys.readouterr().out) == load_config(config)

    def test_validate_reports_success(self, tmp_path, capsys):
        """Test the success line and the -v summary."""
        config = write_config(tmp_path / "run.yaml", "wave: {preset: square}\n")
        args = parse_cli("config", "validate", "--config", config, "--out", str(tmp_path))

        set_verbosity(1)
        ConfigCommands.process_cli_command(args)

        captured = capsys.readouterr()
        assert captured.out == f"{config} is valid\n"
        assert "2-D, 2 wave pairs" in captured.err

    def test_validate_defaults(self, tmp_path, capsys):
        """Test validation of the built-in defaults."""
        ConfigCommands.process_cli_command(parse_cli("config", "validate", "--out", str(tmp_path)))

        assert capsys.readouterr().out == "default configuration is valid\n"

    def test_validate_rejects_unknown_preset(self, tmp_path):
        """Test that an unknown preset surfaces as a ConfigError."""
        config = write_config(tmp_path / "run.yaml", "wave: {preset: circle}\n")

        with pytest.raises(ConfigError, match="wave.preset: unknown preset 'circle'"):
            ConfigCommands.process_cli_command(parse_cli("config", "validate", "--config", config))

    def test_validate_collects_every_error(self, tmp_path):
        """Test that all invalid values are reported together."""
        config = write_config(tmp_path / "run.yaml", "threads: 0\nseed: -1\n")

        with pytest.raises(ConfigError) as exc_info:
            ConfigCommands.process_cli_command(parse_cli("config", "validate", "--config", config))

        assert "threads" in str(exc_info.value)
        assert "seed" in str(exc_info.value)
