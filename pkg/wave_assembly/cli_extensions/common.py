"""Arguments and run setup shared by the analysis commands."""

import argparse
from dataclasses import dataclass, replace
from pathlib import Path

from wave_assembly.config import GridConfig, RunConfig, load_config
from wave_assembly.core import ArpCoefficients, WaveConfig, create_default_preset_registry
from wave_assembly.output import MessageType, VerbosityLevel, message


def common_arguments() -> argparse.ArgumentParser:
    """Parent parser with the options every run-based command accepts."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", metavar="PATH", help="YAML run configuration")
    parser.add_argument("--preset", metavar="NAME", help="Wave preset (overrides the configuration)")
    parser.add_argument("--grid-box", type=float, metavar="F", help="Half width of the analysis box in wavelengths")
    parser.add_argument("--grid-res", type=int, metavar="N", help="Grid points per axis")
    parser.add_argument("--threads", type=int, metavar="N", help="Worker threads for grid sweeps")
    parser.add_argument("--seed", type=int, metavar="N", help="Seed for random and quasi-random sampling")
    parser.add_argument("--out", metavar="DIR", default=".", help="Output directory (default: current directory)")
    return parser


@dataclass(frozen=True, eq=False)
class RunContext:
    """Everything a command needs once the configuration is resolved."""

    config: RunConfig
    wave: WaveConfig
    coefficients: ArpCoefficients
    out: Path

    @property
    def dimension(self) -> int:
        return self.wave.dimension


def resolve_run_config(args: argparse.Namespace) -> RunConfig:
    """Load ``--config`` (or the defaults) and apply command-line overrides."""
    config = load_config(args.config) if getattr(args, "config", None) else RunConfig()

    preset = getattr(args, "preset", None)
    if preset is not None:
        config = replace(config, preset=preset, wavevectors=None, amplitudes=None)
    grid_box = getattr(args, "grid_box", None)
    grid_res = getattr(args, "grid_res", None)
    if grid_box is not None:
        config = replace(config, grid=GridConfig(half_width=grid_box, resolution=config.grid.resolution))
    if grid_res is not None:
        config = replace(config, grid=replace(config.grid, resolution=grid_res))
    if getattr(args, "threads", None) is not None:
        config = replace(config, threads=args.threads)
    if getattr(args, "seed", None) is not None:
        config = replace(config, seed=args.seed)

    # Overrides bypass the loader, so validate the result the same way
    return RunConfig.from_dict(config.to_dict())


def prepare_run(args: argparse.Namespace) -> RunContext:
    config = resolve_run_config(args)
    wave = config.build_wave(create_default_preset_registry())
    coefficients = config.build_coefficients(wave.dimension)
    out = Path(getattr(args, "out", ".") or ".")
    out.mkdir(parents=True, exist_ok=True)
    message(f"Wave configuration: {wave!r}", MessageType.DEBUG, VerbosityLevel.DEBUG)
    message(
        f"Coefficients: a={coefficients.a:.6e}, B diagonal={list(coefficients.B.diagonal())}",
        MessageType.DEBUG,
        VerbosityLevel.DEBUG,
    )
    return RunContext(config=config, wave=wave, coefficients=coefficients, out=out)


def skipped_output(run: RunContext, kind: str) -> bool:
    """True (with a note at -v) when ``kind`` is not among the configured outputs."""
    if kind in run.config.outputs:
        return False
    message(f"Output '{kind}' not selected; nothing written", MessageType.INFO, VerbosityLevel.VERBOSE)
    return True
