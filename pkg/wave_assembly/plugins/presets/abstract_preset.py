"""Abstract base class for named wave configurations."""

from abc import ABC, abstractmethod

from wave_assembly.core.field import WaveConfig


class AbstractPreset(ABC):
    """A named, reproducible plane-wave configuration.

    Subclasses set ``NAME`` (the key used by ``--preset`` and config files)
    and ``DESCRIPTION``. Classes without a ``NAME`` are treated as bases and
    never registered. ``SYMMETRY_ORDER`` is the rotational order the preset
    is expected to have, or 0 when it has none worth checking.
    """

    NAME: str = ""
    DESCRIPTION: str = ""
    SYMMETRY_ORDER: int = 0

    @classmethod
    @abstractmethod
    def build(cls, wavenumber: float) -> WaveConfig:
        """Return the configuration for wavenumber k (rad/m)."""
        pass
