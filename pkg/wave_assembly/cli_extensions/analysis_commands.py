"""CLI commands for structural checks of a wave configuration."""

import argparse

import numpy as np

from wave_assembly.core import (
    ValidationError,
    WavevectorMatrix,
    classify_periodicity,
    create_default_preset_registry,
    rotational_symmetry_defect,
)
from wave_assembly.core.geometry import DEFAULT_QMAX
from wave_assembly.output import MessageType, VerbosityLevel, message

from .common import RunContext, common_arguments, prepare_run

DEFAULT_SYMMETRY_SAMPLES = 1024


def symmetry_radius(run: RunContext, radius: float | None) -> float:
    """``radius`` in wavelengths, or the largest origin-centered disk inside the grid box."""
    if radius is not None:
        return radius * run.wave.wavelength
    spec = run.config.grid_spec(run.dimension)
    inner = min(min(-lo for lo in spec.lower), min(spec.upper))
    if inner <= 0:
        raise ValidationError("the grid box does not contain the origin; pass --radius")
    return inner


class AnalysisCommands:
    """Manages the symmetry and classify commands."""

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        symmetry_parser = subparsers.add_parser(
            "symmetry",
            parents=[common_arguments()],
            help="Print the relative change of psi under rotation by 2 pi / M",
        )
        symmetry_parser.add_argument("--order", type=int, metavar="M", help="Rotation order (default: preset's order)")
        symmetry_parser.add_argument("--radius", type=float, metavar="R", help="Sampling disk radius in wavelengths")
        symmetry_parser.add_argument(
            "--samples", type=int, default=DEFAULT_SYMMETRY_SAMPLES, metavar="N", help="Number of sample points"
        )

        classify_parser = subparsers.add_parser(
            "classify",
            parents=[common_arguments()],
            help="Classify the wavevector set as periodic or quasiperiodic",
        )
        classify_parser.add_argument(
            "--qmax", type=int, default=DEFAULT_QMAX, metavar="Q", help=f"Largest denominator tried (default: {DEFAULT_QMAX})"
        )

    @staticmethod
    def process_cli_command(args: argparse.Namespace) -> None:
        if args.command == "symmetry":
            AnalysisCommands.symmetry(args)
        elif args.command == "classify":
            AnalysisCommands.classify(args)

    @staticmethod
    def symmetry(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        order = args.order
        if order is None:
            preset = run.config.preset
            order = create_default_preset_registry().get(preset).SYMMETRY_ORDER if preset else 0
            if order < 1:
                raise ValidationError("no rotation order known for this configuration; pass --order")
        radius = symmetry_radius(run, args.radius)
        message(
            f"Checking {order}-fold symmetry on a disk of radius {radius / run.wave.wavelength:g} wavelengths",
            MessageType.INFO,
            VerbosityLevel.VERBOSE,
        )
        defect = rotational_symmetry_defect(
            run.wave, run.coefficients, order, radius, samples=args.samples, seed=run.config.seed
        )
        message(f"{defect:.6e}")

    @staticmethod
    def classify(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        result = classify_periodicity(WavevectorMatrix.from_config(run.wave), qmax=args.qmax)
        message(str(result.kind))
        for line in result.witness_lines():
            message(line)
        if result.translations is not None:
            wavelength = run.wave.wavelength
            for column in np.asarray(result.translations).T:
                lengths = ", ".join(f"{v / wavelength:.9g}" for v in column)
                message(f"T = ({lengths}) wavelengths")
        elif not result.is_periodic:
            message(
                f"No rational relation with denominators up to {args.qmax}",
                MessageType.INFO,
                VerbosityLevel.VERBOSE,
            )
