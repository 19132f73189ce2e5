"""CLI command for comparing simulated minima with an experiment photograph."""

import argparse

import numpy as np

from wave_assembly.core import (
    Polarity,
    UnsupportedDimensionError,
    ValidationError,
    agreement_curve,
    binarize,
    compose_overlay,
    evaluation_circle,
    fit_homography,
    project_minima,
)
from wave_assembly.core.imaging import DEFAULT_ALPHAS, reprojection_errors
from wave_assembly.output import MessageType, VerbosityLevel, message, timed
from wave_assembly.utils.formats import UNDEFINED, read_correspondences, read_minima_csv, write_curve_csv
from wave_assembly.utils.images import read_image, write_mask, write_ppm

from .common import common_arguments, prepare_run, skipped_output
from .minima_commands import find_minima

DEFAULT_SENSITIVITY = 0.45
DEFAULT_MARKER_RADIUS = 3.0
SIMULATED_MASK = "simulated_mask.pgm"
EXPERIMENT_MASK = "experiment_mask.pgm"
OVERLAY_IMAGE = "overlay.ppm"
AGREEMENT_CSV = "agreement.csv"


class CompareCommands:
    """Registers minima onto a photograph and reports the agreement curve."""

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        compare_parser = subparsers.add_parser(
            "compare",
            parents=[common_arguments()],
            help="Overlay projected minima on a binarized experiment image",
        )
        compare_parser.add_argument("--image", required=True, metavar="IMAGE", help="Experiment photograph (PGM, PNG, TIFF, ...)")
        compare_parser.add_argument(
            "--pairs", required=True, metavar="PATH", help="Correspondences, one 'sx sy tx ty' per line (m -> px)"
        )
        compare_parser.add_argument("--minima", metavar="CSV", help="Refined minima from 'minima' (default: compute)")
        compare_parser.add_argument(
            "--sensitivity", type=float, default=DEFAULT_SENSITIVITY, help=f"Threshold (default: {DEFAULT_SENSITIVITY})"
        )
        compare_parser.add_argument(
            "--polarity",
            choices=[p.value for p in Polarity],
            default=Polarity.DARK.value,
            help="Whether particles are darker or brighter than the background",
        )
        compare_parser.add_argument(
            "--radius", type=float, default=DEFAULT_MARKER_RADIUS, metavar="PX", help="Marker disk radius in pixels"
        )
        compare_parser.add_argument(
            "--alphas", type=float, nargs="+", default=list(DEFAULT_ALPHAS), metavar="A", help="Circle size factors"
        )
        compare_parser.add_argument("--center", type=float, nargs=2, metavar=("CX", "CY"), help="Circle center (px)")
        compare_parser.add_argument("--diameter-px", type=float, metavar="D", help="Full circle diameter (px)")

    @staticmethod
    def process_cli_command(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        if run.dimension != 2:
            raise UnsupportedDimensionError("image comparison is only available for 2-D configurations")
        image = read_image(args.image)
        experiment = binarize(image, args.sensitivity, Polarity(args.polarity))
        message(
            f"Binarized {image.width}x{image.height} image: {experiment.count} foreground pixels",
            MessageType.INFO,
            VerbosityLevel.VERBOSE,
        )

        source, target = read_correspondences(args.pairs)
        H = fit_homography(source, target)
        errors = reprojection_errors(H, source, target)
        message(
            f"Homography from {len(source)} pairs: RMS reprojection {float(np.sqrt(np.mean(errors**2))):.3f} px",
            MessageType.INFO,
            VerbosityLevel.VERBOSE,
        )

        if args.minima:
            minima = read_minima_csv(args.minima)
            if minima.dimension != 2:
                raise ValidationError(f"{args.minima}: comparison needs 2-D minima, got {minima.dimension}-D")
        else:
            with timed("Minima search"):
                _, minima = find_minima(run)
        simulated = project_minima(H, minima, image.width, image.height, args.radius)

        center, diameter = evaluation_circle(H, run.wave.wavelength)
        if args.center is not None:
            center = np.array(args.center)
        if args.diameter_px is not None:
            diameter = args.diameter_px
        curve = agreement_curve(simulated, experiment, center, diameter, args.alphas)

        for point in curve:
            agreement = UNDEFINED if point.agreement is None else f"{point.agreement:.2f}%"
            message(f"alpha={point.alpha:.3f} diameter={point.diameter_px:.1f}px agreement={agreement}")

        if not skipped_output(run, "overlay"):
            write_mask(run.out / SIMULATED_MASK, simulated)
            write_mask(run.out / EXPERIMENT_MASK, experiment)
            write_ppm(run.out / OVERLAY_IMAGE, compose_overlay(simulated, experiment))
            message(f"Wrote {run.out / OVERLAY_IMAGE}", MessageType.SUCCESS)
        if not skipped_output(run, "agreement_csv"):
            write_curve_csv(run.out / AGREEMENT_CSV, curve)
            message(f"Wrote {run.out / AGREEMENT_CSV}", MessageType.SUCCESS)
