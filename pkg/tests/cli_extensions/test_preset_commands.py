"""Tests for cli_extensions/preset_commands.py - Preset CLI commands."""

import argparse

import pytest

from wave_assembly.cli_extensions import PresetCommands
from wave_assembly.core import PresetRegistry, ValidationError, create_default_preset_registry
from wave_assembly.plugins.presets import Experiment2Preset, OctagonPreset, PairPreset


@pytest.fixture
def preset_commands():
    return PresetCommands(create_default_preset_registry())


class TestPresetCommandsAddCliArguments:
    """Test cases for add_cli_arguments method."""

    def test_list_and_show(self):
        """Test that both subcommands are registered."""
        parser = argparse.ArgumentParser()
        subparsers = parser.add_subparsers(dest="command")

        PresetCommands.add_cli_arguments(subparsers)

        assert parser.parse_args(["presets", "list"]).presets_command == "list"
        args = parser.parse_args(["presets", "show", "octagon"])
        assert args.presets_command == "show"
        assert args.name == "octagon"


class TestPresetCommandsProcessCliCommand:
    """Test cases for process_cli_command method."""

    def test_no_subcommand(self, preset_commands):
        """Test that a missing subcommand is a validation error."""
        with pytest.raises(ValidationError, match="list, show"):
            preset_commands.process_cli_command(argparse.Namespace(presets_command=None))

    def test_dispatches_show(self, preset_commands, capsys):
        """Test that show is routed with the preset name."""
        preset_commands.process_cli_command(argparse.Namespace(presets_command="show", name="pair"))

        assert capsys.readouterr().out.startswith("pair: ")


class TestListPresets:
    """Test cases for list_presets."""

    def test_lists_every_builtin(self, preset_commands, capsys):
        """Test one aligned line per preset with its symmetry order."""
        preset_commands.list_presets()

        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 8
        assert lines[0].startswith("decagon  ")
        assert any(line.startswith("octagon ") and line.endswith("[8-fold]") for line in lines)
        assert any(line.startswith("pair ") and line.endswith("[2-fold]") for line in lines)

    def test_empty_registry_warns(self, capsys):
        """Test the warning when nothing is registered."""
        PresetCommands(PresetRegistry()).list_presets()

        captured = capsys.readouterr()
        assert captured.out == ""
        assert "No presets available" in captured.err


class TestShowPreset:
    """Test cases for show_preset."""

    def test_octagon(self, preset_commands, capsys):
        """Test the summary and one line per wave pair."""
        preset_commands.show_preset("octagon")

        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == f"octagon: {OctagonPreset.DESCRIPTION}"
        assert lines[1] == "  dimension 2, 4 wave pairs, rank 2, |alpha| + |beta| = 8"
        assert lines[2].startswith("  k1 = (+1.000000, +0.000000)")
        assert lines[4].startswith("  k3 = (+0.000000, +1.000000)")
        assert lines[-1] == "  expected rotational order 8"
        assert len(lines) == 7

    def test_antiphase_amplitudes(self, preset_commands, capsys):
        """Test that exp2 shows the negative amplitudes of its second pair."""
        preset_commands.show_preset("exp2")

        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith(f"exp2: {Experiment2Preset.DESCRIPTION}")
        assert "alpha = -1+0j" in lines[3]
        assert "beta = -1+0j" in lines[3]
        assert "alpha = 1+0j" in lines[2]

    def test_pair_is_rank_one(self, preset_commands, capsys):
        """Test the single standing wave."""
        preset_commands.show_preset("pair")

        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == f"pair: {PairPreset.DESCRIPTION}"
        assert "1 wave pairs, rank 1" in lines[1]

    def test_unknown_preset(self, preset_commands):
        """Test that unknown names list the available presets."""
        with pytest.raises(ValidationError, match="available: decagon"):
            preset_commands.show_preset("circle")
