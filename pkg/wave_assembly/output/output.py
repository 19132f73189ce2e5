"""Verbosity-aware console output for wave-assembly."""

import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from enum import IntEnum


class VerbosityLevel(IntEnum):
    """Verbosity levels for output."""

    ALWAYS = 0  # no -v required
    VERBOSE = 1  # -v
    EXTRA_VERBOSE = 2  # -vv
    DEBUG = 3  # -vvv


class MessageType(IntEnum):
    """Message types with associated colors and prefixes."""

    NORMAL = 0
    SUCCESS = 1
    ERROR = 2
    WARNING = 3
    INFO = 4
    DEBUG = 5


class Color:
    """ANSI color codes for terminal output."""

    RED = "\033[91m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    CYAN = "\033[96m"

    DIM = "\033[2m"
    RESET = "\033[0m"

    ERROR = RED
    WARNING = YELLOW
    SUCCESS = GREEN
    INFO = CYAN
    DEBUG = DIM


class OutputManager:
    """Prints results to stdout and diagnostics to stderr, filtered by verbosity.

    Results (NORMAL, SUCCESS) are kept on stdout so that values such as a
    symmetry defect can be piped; everything else is a diagnostic.
    """

    PREFIXES = {
        MessageType.NORMAL: "",
        MessageType.SUCCESS: "",
        MessageType.ERROR: "Error: ",
        MessageType.WARNING: "Warning: ",
        MessageType.INFO: "",
        MessageType.DEBUG: "DEBUG: ",
    }

    COLORS = {
        MessageType.NORMAL: None,
        MessageType.SUCCESS: Color.SUCCESS,
        MessageType.ERROR: Color.ERROR,
        MessageType.WARNING: Color.WARNING,
        MessageType.INFO: Color.INFO,
        MessageType.DEBUG: Color.DEBUG,
    }

    RESULT_TYPES = (MessageType.NORMAL, MessageType.SUCCESS)

    def __init__(self, verbosity: int = 0, use_color: bool = True, force_color: bool = False):
        """Initialize the output manager.

        Args:
            verbosity: Verbosity level (0-3)
            use_color: Whether to use ANSI colors (checked against isatty unless force_color=True)
            force_color: Force color output even if stdout is not a TTY
        """
        self.verbosity = verbosity
        self.use_color = use_color and (force_color or sys.stdout.isatty())

    def set_verbosity(self, level: int) -> None:
        self.verbosity = level

    def message(
        self,
        text: str,
        msg_type: MessageType = MessageType.NORMAL,
        verbosity: VerbosityLevel = VerbosityLevel.ALWAYS,
    ) -> None:
        """Print a message with specified type and verbosity requirement.

        Args:
            text: The message text to print
            msg_type: Visual style and stream; NORMAL and SUCCESS go to stdout,
                      ERROR, WARNING, INFO and DEBUG go to stderr
            verbosity: Minimum verbosity at which the message is shown
        """
        if self.verbosity < verbosity:
            return

        final_message = f"{self.PREFIXES[msg_type]}{text}"
        color = self.COLORS[msg_type]
        if self.use_color and color:
            final_message = f"{color}{final_message}{Color.RESET}"

        # Looked up at call time so tests can swap the streams
        file = sys.stdout if msg_type in self.RESULT_TYPES else sys.stderr
        print(final_message, file=file)


_output_manager = OutputManager()


def get_output() -> OutputManager:
    """Get the global output manager instance."""
    return _output_manager


def set_verbosity(level: int) -> None:
    """Set the global verbosity level (0-3)."""
    _output_manager.set_verbosity(level)


def message(
    text: str,
    msg_type: MessageType = MessageType.NORMAL,
    verbosity: VerbosityLevel = VerbosityLevel.ALWAYS,
) -> None:
    """Print a message through the global output manager.

    Examples:
        message("periodic")
        message("Wrote minima.csv", MessageType.SUCCESS)
        message("grid has no passing cells", MessageType.WARNING, VerbosityLevel.VERBOSE)
        message("chunk 3/16 done", MessageType.DEBUG, VerbosityLevel.DEBUG)
    """
    _output_manager.message(text, msg_type, verbosity)


@contextmanager
def timed(label: str, verbosity: VerbosityLevel = VerbosityLevel.VERBOSE) -> Iterator[None]:
    """Report the wall time spent inside the block as an INFO message."""
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        message(f"{label} took {elapsed:.3f} s", MessageType.INFO, verbosity)
