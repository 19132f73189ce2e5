"""Regular-polygon arrangements of N wave pairs."""

import numpy as np

from wave_assembly.core.field import WaveConfig
from wave_assembly.core.geometry import polygon_wavevectors

from .abstract_preset import AbstractPreset


class PolygonPreset(AbstractPreset):
    """N pairs at angles j pi / N with unit amplitudes; 2N propagation directions."""

    PAIRS: int = 0

    @classmethod
    def build(cls, wavenumber: float) -> WaveConfig:
        K = polygon_wavevectors(cls.PAIRS, wavenumber).K
        return WaveConfig(wavenumber, K, np.ones(cls.PAIRS), np.ones(cls.PAIRS))


class PairPreset(PolygonPreset):
    NAME = "pair"
    DESCRIPTION = "One standing wave along x (planar nodes every half wavelength)"
    PAIRS = 1
    SYMMETRY_ORDER = 2


class SquarePreset(PolygonPreset):
    NAME = "square"
    DESCRIPTION = "Two orthogonal pairs, periodic 4-fold pattern"
    PAIRS = 2
    SYMMETRY_ORDER = 4


class HexagonPreset(PolygonPreset):
    NAME = "hexagon"
    DESCRIPTION = "Three pairs at 60 degrees, periodic 6-fold pattern"
    PAIRS = 3
    SYMMETRY_ORDER = 6


class OctagonPreset(PolygonPreset):
    NAME = "octagon"
    DESCRIPTION = "Four pairs at 45 degrees, quasiperiodic 8-fold pattern"
    PAIRS = 4
    SYMMETRY_ORDER = 8


class DecagonPreset(PolygonPreset):
    NAME = "decagon"
    DESCRIPTION = "Five pairs at 36 degrees, quasiperiodic 10-fold pattern"
    PAIRS = 5
    SYMMETRY_ORDER = 10


class DodecagonPreset(PolygonPreset):
    NAME = "dodecagon"
    DESCRIPTION = "Six pairs at 30 degrees, quasiperiodic 12-fold pattern"
    PAIRS = 6
    SYMMETRY_ORDER = 12
