"""Output and logging utilities for wave-assembly."""

from wave_assembly.output.output import (
    Color,
    MessageType,
    OutputManager,
    VerbosityLevel,
    get_output,
    message,
    set_verbosity,
    timed,
)

__all__ = [
    "Color",
    "MessageType",
    "OutputManager",
    "VerbosityLevel",
    "get_output",
    "message",
    "set_verbosity",
    "timed",
]
