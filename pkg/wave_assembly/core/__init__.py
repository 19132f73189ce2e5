"""Numerical core of wave-assembly."""

from .batch import DEFAULT_CHUNK_SIZE, run_chunked
from .errors import (
    DimensionError,
    DivergenceError,
    FitError,
    MinimaError,
    SaddleError,
    UnsupportedDimensionError,
    ValidationError,
    WaveAssemblyError,
)
from .field import (
    FieldJet,
    FieldSample,
    WaveConfig,
    evaluate_field,
    evaluate_field_derivatives,
    evaluate_field_sample,
    evaluate_periodic_field,
    field_jet,
)
from .geometry import (
    Periodicity,
    PeriodicityResult,
    WavevectorMatrix,
    classify_periodicity,
    polygon_wavevectors,
    rotational_symmetry_defect,
)
from .imaging import (
    AgreementPoint,
    BinaryMask,
    GrayImage,
    Homography,
    Polarity,
    agreement_curve,
    binarize,
    compose_overlay,
    evaluation_circle,
    fit_homography,
    overlap_fraction,
    project_minima,
)
from .minima import (
    CriteriaMode,
    MinimaCriteria,
    MinimaSet,
    MinimumRecord,
    RefinedMinimum,
    RelaxationResult,
    detect_minima,
    hausdorff_distance,
    refine_minima,
    refine_minimum,
    relax_particles,
)
from .potential import (
    ArpCoefficients,
    ArpMode,
    FieldGrid,
    GridSpec,
    MaterialParams,
    arp_coefficients,
    arp_jet,
    evaluate_arp,
    evaluate_arp_derivatives,
    evaluate_arp_grid,
    evaluate_periodic_arp,
)
from .preset_registry import PresetRegistry
from .presets import create_default_preset_registry, discover_preset_classes

__all__ = [
    "DEFAULT_CHUNK_SIZE",
    "AgreementPoint",
    "ArpCoefficients",
    "ArpMode",
    "BinaryMask",
    "CriteriaMode",
    "DimensionError",
    "DivergenceError",
    "FieldGrid",
    "FieldJet",
    "FieldSample",
    "FitError",
    "GrayImage",
    "GridSpec",
    "Homography",
    "MaterialParams",
    "MinimaCriteria",
    "MinimaError",
    "MinimaSet",
    "MinimumRecord",
    "Periodicity",
    "PeriodicityResult",
    "Polarity",
    "PresetRegistry",
    "RefinedMinimum",
    "RelaxationResult",
    "SaddleError",
    "UnsupportedDimensionError",
    "ValidationError",
    "WaveAssemblyError",
    "WaveConfig",
    "WavevectorMatrix",
    "agreement_curve",
    "arp_coefficients",
    "arp_jet",
    "binarize",
    "classify_periodicity",
    "compose_overlay",
    "create_default_preset_registry",
    "detect_minima",
    "discover_preset_classes",
    "evaluate_arp",
    "evaluate_arp_derivatives",
    "evaluate_arp_grid",
    "evaluate_field",
    "evaluate_field_derivatives",
    "evaluate_field_sample",
    "evaluate_periodic_arp",
    "evaluate_periodic_field",
    "evaluation_circle",
    "field_jet",
    "fit_homography",
    "hausdorff_distance",
    "overlap_fraction",
    "polygon_wavevectors",
    "project_minima",
    "refine_minima",
    "refine_minimum",
    "relax_particles",
    "rotational_symmetry_defect",
    "run_chunked",
]
