"""Drive settings of the two octagonal transducer experiments.

Four transducer pairs sit at angles j pi / 4. The drive vector lists the
forward amplitudes of every pair first, then the backward ones:
u = [alpha_1..alpha_4, beta_1..beta_4].
"""

import numpy as np

from wave_assembly.core.field import WaveConfig
from wave_assembly.core.geometry import polygon_wavevectors

from .abstract_preset import AbstractPreset


class ExperimentPreset(AbstractPreset):
    DRIVE_VECTOR: tuple[complex, ...] = ()

    @classmethod
    def build(cls, wavenumber: float) -> WaveConfig:
        u = np.asarray(cls.DRIVE_VECTOR, dtype=complex)
        pairs = len(u) // 2
        return WaveConfig(wavenumber, polygon_wavevectors(pairs, wavenumber).K, u[:pairs], u[pairs:])


class Experiment1Preset(ExperimentPreset):
    NAME = "exp1"
    DESCRIPTION = "Octagon, every transducer driven in phase: u = [1,1,1,1,1,1,1,1]"
    DRIVE_VECTOR = (1, 1, 1, 1, 1, 1, 1, 1)
    SYMMETRY_ORDER = 8


class Experiment2Preset(ExperimentPreset):
    NAME = "exp2"
    DESCRIPTION = "Octagon, second pair driven in antiphase: u = [1,-1,1,1,1,-1,1,1]"
    DRIVE_VECTOR = (1, -1, 1, 1, 1, -1, 1, 1)
    SYMMETRY_ORDER = 2
