"""CLI commands for inspecting the available wave presets."""

import argparse

from wave_assembly.core import PresetRegistry, ValidationError
from wave_assembly.output import MessageType, VerbosityLevel, message


class PresetCommands:
    """Manager for preset-related CLI commands."""

    def __init__(self, registry: PresetRegistry):
        """Initialize the preset commands handler.

        Args:
            registry: The preset registry to inspect
        """
        self.registry = registry

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        """Add preset-related CLI arguments.

        Args:
            subparsers: The argparse subparsers to add to
        """
        presets_parser = subparsers.add_parser("presets", help="Inspect wave presets")
        presets_subparsers = presets_parser.add_subparsers(dest="presets_command", help="Preset commands")

        # presets list
        presets_subparsers.add_parser("list", help="List built-in and installed presets")

        # presets show
        show_parser = presets_subparsers.add_parser("show", help="Show the wavevectors and amplitudes of a preset")
        show_parser.add_argument("name", help="Preset name (e.g., octagon)")

    def process_cli_command(self, args: argparse.Namespace) -> None:
        if getattr(args, "presets_command", None) is None:
            raise ValidationError("no presets subcommand specified; available commands: list, show")

        if args.presets_command == "list":
            self.list_presets()
        elif args.presets_command == "show":
            self.show_preset(args.name)

    def list_presets(self) -> None:
        presets = self.registry.list_presets()
        if not presets:
            message("No presets available", MessageType.WARNING, VerbosityLevel.ALWAYS)
            return

        width = max(len(name) for name in presets)
        for name, description in presets.items():
            order = self.registry.get(name).SYMMETRY_ORDER
            symmetry = f" [{order}-fold]" if order > 1 else ""
            message(f"{name:<{width}}  {description}{symmetry}")

    def show_preset(self, name: str) -> None:
        """Print one line per wave pair: unit direction, alpha and beta."""
        preset = self.registry.get(name)
        cfg = preset.build(1.0)
        message(f"{preset.NAME}: {preset.DESCRIPTION}")
        message(
            f"  dimension {cfg.dimension}, {cfg.count} wave pairs, rank {cfg.rank()}, "
            f"|alpha| + |beta| = {cfg.amplitude_norm:g}"
        )
        for j in range(cfg.count):
            direction = ", ".join(f"{v:+.6f}" for v in cfg.wavevectors[:, j])
            message(
                f"  k{j + 1} = ({direction})  alpha = {complex(cfg.alphas[j]):g}  beta = {complex(cfg.betas[j]):g}"
            )
        if preset.SYMMETRY_ORDER > 1:
            message(f"  expected rotational order {preset.SYMMETRY_ORDER}")
