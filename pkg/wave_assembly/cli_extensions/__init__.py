"""CLI command extensions for wave-assembly."""

from .analysis_commands import AnalysisCommands
from .compare_commands import CompareCommands
from .config_commands import ConfigCommands
from .field_commands import FieldCommands
from .minima_commands import MinimaCommands
from .preset_commands import PresetCommands

__all__ = [
    "AnalysisCommands",
    "CompareCommands",
    "ConfigCommands",
    "FieldCommands",
    "MinimaCommands",
    "PresetCommands",
]
