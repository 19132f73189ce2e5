"""Built-in wave presets."""

from .abstract_preset import AbstractPreset
from .experiment_presets import Experiment1Preset, Experiment2Preset, ExperimentPreset
from .polygon_presets import (
    DecagonPreset,
    DodecagonPreset,
    HexagonPreset,
    OctagonPreset,
    PairPreset,
    PolygonPreset,
    SquarePreset,
)

__all__ = [
    "AbstractPreset",
    "DecagonPreset",
    "DodecagonPreset",
    "Experiment1Preset",
    "Experiment2Preset",
    "ExperimentPreset",
    "HexagonPreset",
    "OctagonPreset",
    "PairPreset",
    "PolygonPreset",
    "SquarePreset",
]
