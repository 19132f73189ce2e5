"""Registry of named wave presets."""

from typing import TYPE_CHECKING

from wave_assembly.output import MessageType, VerbosityLevel, message

from .errors import ValidationError
from .field import WaveConfig

if TYPE_CHECKING:
    from wave_assembly.plugins.presets.abstract_preset import AbstractPreset


class PresetRegistry:
    """Name-based lookup of preset classes."""

    def __init__(self):
        self.presets: dict[str, type["AbstractPreset"]] = {}

    def register(self, preset: type["AbstractPreset"]) -> None:
        """Register ``preset`` under its NAME, replacing any earlier entry."""
        if not preset.NAME:
            raise ValidationError(f"{preset.__name__} has no NAME and cannot be registered")
        if preset.NAME in self.presets and self.presets[preset.NAME] is not preset:
            message(
                f"Preset '{preset.NAME}' from {preset.__name__} replaces {self.presets[preset.NAME].__name__}",
                MessageType.WARNING,
                VerbosityLevel.VERBOSE,
            )
        self.presets[preset.NAME] = preset
        message(f"Registered preset: {preset.NAME}", MessageType.DEBUG, VerbosityLevel.DEBUG)

    def get(self, name: str) -> type["AbstractPreset"]:
        try:
            return self.presets[name]
        except KeyError:
            raise ValidationError(f"unknown preset '{name}'; available: {', '.join(self.names())}") from None

    def build(self, name: str, wavenumber: float) -> WaveConfig:
        return self.get(name).build(wavenumber)

    def names(self) -> list[str]:
        return sorted(self.presets)

    def __contains__(self, name: str) -> bool:
        return name in self.presets

    def list_presets(self) -> dict[str, str]:
        """Map of preset name to description, sorted by name."""
        return {name: self.presets[name].DESCRIPTION for name in self.names()}
