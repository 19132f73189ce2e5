"""Run configuration for wave-assembly.

A run is described by one YAML document:

    wave:
      preset: exp1            # or wavevectors / directions (+ amplitudes)
      frequency: 1.0e+6       # Hz
      wavenumber: null        # rad/m, default 2 pi f / c0
    material: {rho0: 1000, c0: 1500, rho_p: 2100, c_p: 5300}
    coefficients: {a: 5.7424e+6, B: 0.2115, mode: acoustic}   # instead of material
    grid: {half_width: 7.0, resolution: 1024}                 # wavelengths
    criteria: {mode: auto}
    outputs: [field_image, minima_csv]   # default: every kind
    threads: 1
    seed: 0

Explicit ``wavevectors`` are given in units of the wavenumber, so every
entry must have unit length; ``directions`` may have any nonzero length
and are normalized. Amplitudes are (alpha, beta) pairs; a complex number
is written as a plain number or as [re, im].
"""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from wave_assembly.core.errors import ValidationError
from wave_assembly.core.field import WAVENUMBER_RTOL, WaveConfig
from wave_assembly.core.minima import CriteriaMode, MinimaCriteria
from wave_assembly.core.potential import ArpCoefficients, ArpMode, GridSpec, MaterialParams, arp_coefficients
from wave_assembly.output import MessageType, VerbosityLevel, message

DEFAULT_FREQUENCY = 1.0e6
DEFAULT_SOUND_SPEED = 1500.0
DEFAULT_HALF_WIDTH = 7.0
DEFAULT_RESOLUTION = 1024
OUTPUT_KINDS = ("field_image", "field_raw", "minima_csv", "trajectories_csv", "overlay", "agreement_csv")
DEFAULT_OUTPUTS = OUTPUT_KINDS


class ConfigError(ValidationError):
    """Raised for invalid run configurations; holds every problem found."""

    def __init__(self, errors: str | list[str]):
        """Initialize ConfigError.

        Args:
            errors: Single error message or list of error messages
        """
        self.errors = [errors] if isinstance(errors, str) else list(errors)
        super().__init__(self._format_errors())

    def _format_errors(self) -> str:
        if len(self.errors) == 1:
            return self.errors[0]
        error_list = "\n".join(f"  - {err}" for err in self.errors)
        return f"Configuration has {len(self.errors)} errors:\n{error_list}"


@dataclass(frozen=True)
class MaterialConfig:
    """Fluid and particle properties; the frequency comes from the wave section."""

    rho0: float = 1000.0
    c0: float = DEFAULT_SOUND_SPEED
    rho_p: float = 2100.0
    c_p: float = 5300.0

    def params(self, omega: float) -> MaterialParams:
        return MaterialParams(rho0=self.rho0, c0=self.c0, rho_p=self.rho_p, c_p=self.c_p, omega=omega)


@dataclass(frozen=True)
class CoefficientConfig:
    """Directly specified potential coefficients; a scalar B means B * I_d."""

    a: float
    B: float | tuple[tuple[float, ...], ...]
    mode: ArpMode = ArpMode.ACOUSTIC

    def __post_init__(self):
        if self.mode is ArpMode.OPTICAL and np.any(np.asarray(self.B, dtype=float) != 0):
            raise ConfigError("coefficients: optical mode requires B to be exactly zero")

    def build(self, dimension: int) -> ArpCoefficients:
        return ArpCoefficients.direct(self.a, self.B, dimension, self.mode)


@dataclass(frozen=True)
class GridConfig:
    """Analysis box in wavelengths: either centered by half_width or given by corners."""

    half_width: float | None = DEFAULT_HALF_WIDTH
    resolution: int | tuple[int, ...] = DEFAULT_RESOLUTION
    lower: tuple[float, ...] | None = None
    upper: tuple[float, ...] | None = None

    def spec(self, wavelength: float, dimension: int) -> GridSpec:
        resolution = self.resolution if isinstance(self.resolution, tuple) else (self.resolution,) * dimension
        if self.lower is not None:
            lower = tuple(wavelength * v for v in self.lower)
            upper = tuple(wavelength * v for v in self.upper)
        else:
            lower = (-wavelength * self.half_width,) * dimension
            upper = (wavelength * self.half_width,) * dimension
        return GridSpec(lower, upper, resolution)


@dataclass(frozen=True)
class RunConfig:
    """Validated description of a run; see the module docstring for the document layout."""

    preset: str | None = "exp1"
    wavevectors: tuple[tuple[float, ...], ...] | None = None
    amplitudes: tuple[tuple[complex, complex], ...] | None = None
    frequency: float = DEFAULT_FREQUENCY
    wavenumber: float | None = None
    material: MaterialConfig | None = field(default_factory=MaterialConfig)
    coefficients: CoefficientConfig | None = None
    grid: GridConfig = field(default_factory=GridConfig)
    criteria: MinimaCriteria = field(default_factory=MinimaCriteria)
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    threads: int = 1
    seed: int = 0

    @property
    def omega(self) -> float:
        return 2 * math.pi * self.frequency

    @property
    def sound_speed(self) -> float:
        return self.material.c0 if self.material is not None else DEFAULT_SOUND_SPEED

    @property
    def resolved_wavenumber(self) -> float:
        return self.wavenumber if self.wavenumber is not None else self.omega / self.sound_speed

    @property
    def wavelength(self) -> float:
        return 2 * math.pi / self.resolved_wavenumber

    def build_wave(self, registry=None) -> WaveConfig:
        """Construct the WaveConfig named by the preset or given explicitly."""
        k = self.resolved_wavenumber
        if self.preset is not None:
            if registry is None:
                from wave_assembly.core.presets import create_default_preset_registry

                registry = create_default_preset_registry()
            cfg = registry.build(self.preset, k)
            if self.amplitudes is not None:
                cfg = cfg.with_amplitudes([a for a, _ in self.amplitudes], [b for _, b in self.amplitudes])
            return cfg

        K = k * np.array(self.wavevectors, dtype=float).T
        count = K.shape[1]
        if self.amplitudes is None:
            return WaveConfig(k, K, np.ones(count), np.ones(count))
        return WaveConfig(k, K, [a for a, _ in self.amplitudes], [b for _, b in self.amplitudes])

    def build_coefficients(self, dimension: int) -> ArpCoefficients:
        if self.coefficients is not None:
            return self.coefficients.build(dimension)
        return arp_coefficients(self.material.params(self.omega), dimension)

    def grid_spec(self, dimension: int) -> GridSpec:
        return self.grid.spec(self.wavelength, dimension)

    def to_dict(self) -> dict[str, Any]:
        """Fully defaulted document; ``RunConfig.from_dict(cfg.to_dict()) == cfg``."""
        wave: dict[str, Any] = {}
        if self.preset is not None:
            wave["preset"] = self.preset
        else:
            wave["wavevectors"] = [list(v) for v in self.wavevectors]
        if self.amplitudes is not None:
            wave["amplitudes"] = [[[z.real, z.imag] for z in pair] for pair in self.amplitudes]
        wave["frequency"] = self.frequency
        wave["wavenumber"] = self.wavenumber

        document: dict[str, Any] = {"wave": wave}
        if self.coefficients is not None:
            B = self.coefficients.B
            document["coefficients"] = {
                "a": self.coefficients.a,
                "B": B if isinstance(B, float) else [list(row) for row in B],
                "mode": str(self.coefficients.mode),
            }
        else:
            document["material"] = {
                "rho0": self.material.rho0,
                "c0": self.material.c0,
                "rho_p": self.material.rho_p,
                "c_p": self.material.c_p,
            }

        grid: dict[str, Any] = {}
        if self.grid.lower is not None:
            grid["lower"] = list(self.grid.lower)
            grid["upper"] = list(self.grid.upper)
        else:
            grid["half_width"] = self.grid.half_width
        grid["resolution"] = list(self.grid.resolution) if isinstance(self.grid.resolution, tuple) else self.grid.resolution
        document["grid"] = grid

        document["criteria"] = {
            "mode": str(self.criteria.mode),
            "eig_min": self.criteria.eig_min,
            "grad_max": self.criteria.grad_max,
            "eig_fraction": self.criteria.eig_fraction,
            "grad_fraction": self.criteria.grad_fraction,
            "grid_slack": self.criteria.grid_slack,
        }
        document["outputs"] = list(self.outputs)
        document["threads"] = self.threads
        document["seed"] = self.seed
        return document

    def dump(self) -> str:
        return yaml.safe_dump(self.to_dict(), default_flow_style=None, sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any] | None, registry=None) -> "RunConfig":
        """Validate a parsed document, collecting every error before raising ConfigError."""
        return _Parser(registry).parse(data)


def _is_number(value: Any) -> bool:
    return isinstance(value, int | float) and not isinstance(value, bool)


class _Parser:
    """Turns a raw YAML mapping into a RunConfig, accumulating errors with field paths."""

    def __init__(self, registry=None):
        self.registry = registry
        self.errors: list[str] = []

    def error(self, path: str, text: str) -> None:
        self.errors.append(f"{path}: {text}")

    def number(self, value: Any, path: str, positive: bool = False) -> float | None:
        # PyYAML reads exponents without a sign (1.0e6) as strings
        if isinstance(value, str):
            try:
                value = float(value)
            except ValueError:
                self.error(path, f"expected a number, got {value!r}")
                return None
        if not _is_number(value) or not math.isfinite(value):
            self.error(path, f"expected a finite number, got {value!r}")
            return None
        if positive and value <= 0:
            self.error(path, f"must be positive, got {value!r}")
            return None
        return float(value)

    def integer(self, value: Any, path: str, minimum: int) -> int | None:
        if not isinstance(value, int) or isinstance(value, bool):
            self.error(path, f"expected an integer, got {value!r}")
            return None
        if value < minimum:
            self.error(path, f"must be at least {minimum}, got {value}")
            return None
        return value

    def complex_number(self, value: Any, path: str) -> complex | None:
        if isinstance(value, list):
            if len(value) != 2:
                self.error(path, f"a complex number is [re, im], got {value!r}")
                return None
            re = self.number(value[0], f"{path}[0]")
            im = self.number(value[1], f"{path}[1]")
            return None if re is None or im is None else complex(re, im)
        re = self.number(value, path)
        return None if re is None else complex(re, 0.0)

    def mapping(self, data: dict[str, Any], key: str) -> dict[str, Any] | None:
        value = data.get(key)
        if value is None:
            return None
        if not isinstance(value, dict):
            self.error(key, f"must be a mapping, got {type(value).__name__}")
            return None
        return value

    def unknown_keys(self, section: dict[str, Any], allowed: tuple[str, ...], prefix: str) -> None:
        for key in section:
            if key not in allowed:
                self.error(f"{prefix}{key}", f"unknown key; expected one of {', '.join(allowed)}")

    def parse(self, data: dict[str, Any] | None) -> RunConfig:
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"configuration must be a mapping, got {type(data).__name__}")
        self.unknown_keys(
            data,
            ("wave", "material", "coefficients", "grid", "criteria", "outputs", "threads", "seed"),
            "",
        )

        wave = self.parse_wave(self.mapping(data, "wave") or {})
        material, coefficients = self.parse_physics(data)
        grid = self.parse_grid(self.mapping(data, "grid") or {})
        criteria = self.parse_criteria(self.mapping(data, "criteria") or {})
        outputs = self.parse_outputs(data.get("outputs", list(DEFAULT_OUTPUTS)))
        threads = self.integer(data.get("threads", 1), "threads", 1)
        seed = self.integer(data.get("seed", 0), "seed", 0)

        if self.errors:
            raise ConfigError(self.errors)

        config = RunConfig(
            material=material,
            coefficients=coefficients,
            grid=grid,
            criteria=criteria,
            outputs=outputs,
            threads=threads,
            seed=seed,
            **wave,
        )
        self.check_wave(config)
        if self.errors:
            raise ConfigError(self.errors)
        return config

    def parse_wave(self, wave: dict[str, Any]) -> dict[str, Any]:
        self.unknown_keys(
            wave,
            ("preset", "wavevectors", "directions", "amplitudes", "frequency", "wavenumber", "dimension"),
            "wave.",
        )
        explicit = [key for key in ("wavevectors", "directions") if wave.get(key) is not None]
        preset = wave.get("preset")
        if preset is not None and explicit:
            self.error("wave", f"'preset' and '{explicit[0]}' are mutually exclusive")
        if len(explicit) > 1:
            self.error("wave", "'wavevectors' and 'directions' are mutually exclusive")
        if preset is None and not explicit:
            preset = "exp1"
        if preset is not None and not isinstance(preset, str):
            self.error("wave.preset", f"expected a preset name, got {preset!r}")
            preset = None

        result: dict[str, Any] = {"preset": preset if not explicit else None, "wavevectors": None}
        if explicit:
            result["wavevectors"] = self.parse_vectors(wave[explicit[0]], f"wave.{explicit[0]}", explicit[0])
            if "dimension" in wave and result["wavevectors"]:
                components = len(result["wavevectors"][0])
                if wave["dimension"] != components:
                    self.error("wave.dimension", f"is {wave['dimension']!r} but the vectors have {components} components")

        result["amplitudes"] = None
        if wave.get("amplitudes") is not None:
            result["amplitudes"] = self.parse_amplitudes(wave["amplitudes"])
        result["frequency"] = self.number(wave.get("frequency", DEFAULT_FREQUENCY), "wave.frequency", positive=True)
        if wave.get("wavenumber") is not None:
            result["wavenumber"] = self.number(wave["wavenumber"], "wave.wavenumber", positive=True)
        else:
            result["wavenumber"] = None
        return result

    def parse_vectors(self, value: Any, path: str, kind: str) -> tuple[tuple[float, ...], ...] | None:
        if not isinstance(value, list) or not value:
            self.error(path, "expected a non-empty list of vectors")
            return None
        vectors = []
        for index, entry in enumerate(value):
            entry_path = f"{path}[{index}]"
            if not isinstance(entry, list) or len(entry) not in (2, 3):
                self.error(entry_path, f"expected a 2- or 3-component vector, got {entry!r}")
                return None
            components = [self.number(v, f"{entry_path}[{i}]") for i, v in enumerate(entry)]
            if any(c is None for c in components):
                return None
            norm = math.sqrt(sum(c * c for c in components))
            if kind == "directions":
                if norm == 0:
                    self.error(entry_path, "direction must be nonzero")
                    return None
                components = [c / norm for c in components]
            elif abs(norm - 1.0) > WAVENUMBER_RTOL:
                self.error(entry_path, f"has magnitude {norm!r} wavenumbers, expected exactly 1")
            vectors.append(tuple(components))
        if len({len(v) for v in vectors}) != 1:
            self.error(path, "all vectors must have the same number of components")
            return None
        return tuple(vectors)

    def parse_amplitudes(self, value: Any) -> tuple[tuple[complex, complex], ...] | None:
        if not isinstance(value, list) or not value:
            self.error("wave.amplitudes", "expected a non-empty list of [alpha, beta] pairs")
            return None
        pairs = []
        for index, pair in enumerate(value):
            path = f"wave.amplitudes[{index}]"
            if not isinstance(pair, list) or len(pair) != 2:
                self.error(path, f"expected an [alpha, beta] pair, got {pair!r}")
                return None
            alpha = self.complex_number(pair[0], f"{path}[0]")
            beta = self.complex_number(pair[1], f"{path}[1]")
            if alpha is None or beta is None:
                return None
            pairs.append((alpha, beta))
        return tuple(pairs)

    def parse_physics(self, data: dict[str, Any]) -> tuple[MaterialConfig | None, CoefficientConfig | None]:
        material = self.mapping(data, "material")
        coefficients = self.mapping(data, "coefficients")
        if material is not None and coefficients is not None:
            self.error("material", "'material' and 'coefficients' are mutually exclusive")
            return None, None

        if coefficients is not None:
            self.unknown_keys(coefficients, ("a", "B", "mode"), "coefficients.")
            a = self.number(coefficients.get("a"), "coefficients.a")
            mode = coefficients.get("mode", "acoustic")
            try:
                mode = ArpMode(mode)
            except ValueError:
                self.error("coefficients.mode", f"expected 'acoustic' or 'optical', got {mode!r}")
                return None, None
            B = coefficients.get("B", 0.0)
            if isinstance(B, list):
                rows = []
                for i, row in enumerate(B):
                    if not isinstance(row, list):
                        self.error(f"coefficients.B[{i}]", "expected a matrix row")
                        return None, None
                    rows.append(tuple(self.number(v, f"coefficients.B[{i}][{j}]") for j, v in enumerate(row)))
                B = tuple(rows)
            else:
                B = self.number(B, "coefficients.B")
            if a is None or B is None:
                return None, None
            try:
                return None, CoefficientConfig(a=a, B=B, mode=mode)
            except ConfigError as e:
                self.errors.extend(e.errors)
                return None, None

        section = material or {}
        self.unknown_keys(section, ("rho0", "c0", "rho_p", "c_p"), "material.")
        defaults = MaterialConfig()
        values = {
            name: self.number(section.get(name, getattr(defaults, name)), f"material.{name}", positive=True)
            for name in ("rho0", "c0", "rho_p", "c_p")
        }
        if any(v is None for v in values.values()):
            return None, None
        return MaterialConfig(**values), None

    def parse_grid(self, grid: dict[str, Any]) -> GridConfig:
        self.unknown_keys(grid, ("half_width", "resolution", "lower", "upper"), "grid.")
        resolution = grid.get("resolution", DEFAULT_RESOLUTION)
        if isinstance(resolution, list):
            resolution = tuple(self.integer(n, f"grid.resolution[{i}]", 2) or 2 for i, n in enumerate(resolution))
        else:
            resolution = self.integer(resolution, "grid.resolution", 2) or DEFAULT_RESOLUTION

        if ("lower" in grid) != ("upper" in grid):
            self.error("grid", "'lower' and 'upper' must be given together")
            return GridConfig(resolution=resolution)
        if "lower" in grid:
            if "half_width" in grid:
                self.error("grid", "'half_width' and 'lower'/'upper' are mutually exclusive")
            corners = []
            for key in ("lower", "upper"):
                value = grid[key]
                if not isinstance(value, list):
                    self.error(f"grid.{key}", "expected a list of coordinates")
                    return GridConfig(resolution=resolution)
                corners.append(tuple(self.number(v, f"grid.{key}[{i}]") or 0.0 for i, v in enumerate(value)))
            lower, upper = corners
            if len(lower) != len(upper):
                self.error("grid", "'lower' and 'upper' must have the same length")
            for axis, (lo, hi) in enumerate(zip(lower, upper, strict=False)):
                if lo >= hi:
                    self.error(f"grid.lower[{axis}]", f"must be below grid.upper[{axis}] ({lo} >= {hi})")
            return GridConfig(half_width=None, resolution=resolution, lower=lower, upper=upper)

        half_width = self.number(grid.get("half_width", DEFAULT_HALF_WIDTH), "grid.half_width", positive=True)
        return GridConfig(half_width=half_width or DEFAULT_HALF_WIDTH, resolution=resolution)

    def parse_criteria(self, criteria: dict[str, Any]) -> MinimaCriteria:
        names = ("eig_min", "grad_max", "eig_fraction", "grad_fraction")
        self.unknown_keys(criteria, ("mode", *names, "grid_slack"), "criteria.")
        defaults = MinimaCriteria()
        mode = criteria.get("mode", "auto")
        try:
            mode = CriteriaMode(mode)
        except ValueError:
            self.error("criteria.mode", f"expected 'auto' or 'absolute', got {mode!r}")
            mode = CriteriaMode.AUTO
        values = {}
        for name in names:
            value = self.number(criteria.get(name, getattr(defaults, name)), f"criteria.{name}", positive=True)
            values[name] = getattr(defaults, name) if value is None else value
        slack = self.number(criteria.get("grid_slack", defaults.grid_slack), "criteria.grid_slack")
        if slack is not None and slack < 0:
            self.error("criteria.grid_slack", f"must be non-negative, got {slack!r}")
            slack = None
        values["grid_slack"] = defaults.grid_slack if slack is None else slack
        return MinimaCriteria(mode=mode, **values)

    def parse_outputs(self, outputs: Any) -> tuple[str, ...]:
        if not isinstance(outputs, list):
            self.error("outputs", "expected a list of output kinds")
            return DEFAULT_OUTPUTS
        for index, kind in enumerate(outputs):
            if kind not in OUTPUT_KINDS:
                self.error(f"outputs[{index}]", f"unknown output {kind!r}; expected one of {', '.join(OUTPUT_KINDS)}")
        return tuple(outputs)

    def check_wave(self, config: RunConfig) -> None:
        """Semantic checks that need the assembled configuration."""
        try:
            cfg = config.build_wave(self.registry)
        except ValidationError as e:
            path = "wave.preset" if config.preset is not None else "wave"
            self.error(path, str(e))
            return
        if config.amplitudes is not None and len(config.amplitudes) != cfg.count:
            self.error("wave.amplitudes", f"expected {cfg.count} pairs, got {len(config.amplitudes)}")
        if isinstance(config.grid.resolution, tuple) and len(config.grid.resolution) != cfg.dimension:
            self.error("grid.resolution", f"expected {cfg.dimension} entries, got {len(config.grid.resolution)}")
        if config.grid.lower is not None and len(config.grid.lower) != cfg.dimension:
            self.error("grid.lower", f"expected {cfg.dimension} coordinates, got {len(config.grid.lower)}")
        try:
            config.build_coefficients(cfg.dimension)
        except ValidationError as e:
            self.error("coefficients" if config.coefficients is not None else "material", str(e))


def parse_config(text: str, source: str = "<config>", registry=None) -> RunConfig:
    """Parse a YAML document into a RunConfig.

    Raises:
        ConfigError: On YAML syntax errors (with line and column) or invalid values
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        problem = getattr(e, "problem", None) or str(e)
        if mark is not None:
            raise ConfigError(f"{source}: line {mark.line + 1}, column {mark.column + 1}: {problem}") from e
        raise ConfigError(f"{source}: {problem}") from e
    return RunConfig.from_dict(data, registry)


def load_config(path: str | Path, registry=None) -> RunConfig:
    """Read and validate a run configuration file; the resolved document is echoed at -vv."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read configuration file {path}: {e.strerror or e}") from e
    config = parse_config(text, str(path), registry)
    message(f"Configuration loaded from {path}", MessageType.DEBUG, VerbosityLevel.DEBUG)
    message(f"Resolved configuration:\n{config.dump()}", MessageType.INFO, VerbosityLevel.EXTRA_VERBOSE)
    return config
