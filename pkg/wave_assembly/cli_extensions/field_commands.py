"""CLI command for sampling the radiation potential on a grid."""

import argparse

import numpy as np

from wave_assembly.core import evaluate_arp_grid
from wave_assembly.core.potential import FieldGrid
from wave_assembly.output import MessageType, VerbosityLevel, message, timed
from wave_assembly.utils.formats import write_sidecar
from wave_assembly.utils.images import MAXVAL_16BIT, quantize, write_pgm

from .common import RunContext, common_arguments, prepare_run, skipped_output

FIELD_IMAGE = "field.pgm"
FIELD_SIDECAR = "field.yaml"
FIELD_RAW = "field.npz"


class FieldCommands:
    """Renders psi as a 16-bit PGM with a metadata sidecar and exports the raw planes."""

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        field_parser = subparsers.add_parser(
            "field",
            parents=[common_arguments()],
            help="Sample psi, |grad psi| and the smallest Hessian eigenvalue on a grid",
        )
        field_parser.add_argument("--scale-min", type=float, metavar="PSI", help="psi mapped to black (default: field min)")
        field_parser.add_argument("--scale-max", type=float, metavar="PSI", help="psi mapped to white (default: field max)")

    @staticmethod
    def process_cli_command(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        spec = run.config.grid_spec(run.dimension)
        with timed("Grid sweep"):
            grid = evaluate_arp_grid(run.wave, run.coefficients, spec, threads=run.config.threads)

        if not skipped_output(run, "field_image"):
            FieldCommands.write_image(run, grid, args.scale_min, args.scale_max)
        if not skipped_output(run, "field_raw"):
            FieldCommands.write_raw(run, grid)

    @staticmethod
    def write_image(run: RunContext, grid: FieldGrid, scale_min: float | None, scale_max: float | None) -> None:
        """Write the psi plane with the upper y row first, plus the sidecar describing the scale."""
        if grid.dimension != 2:
            message("Field images are only written for 2-D grids", MessageType.WARNING, VerbosityLevel.ALWAYS)
            return

        low = float(grid.psi.min()) if scale_min is None else scale_min
        high = float(grid.psi.max()) if scale_max is None else scale_max
        if high <= low:
            message(
                f"Degenerate scale [{low:.6e}, {high:.6e}]; the image is uniform black",
                MessageType.WARNING,
                VerbosityLevel.ALWAYS,
            )
        samples = np.flipud(quantize(grid.psi, low, high, MAXVAL_16BIT))
        write_pgm(run.out / FIELD_IMAGE, samples, maxval=MAXVAL_16BIT)
        write_sidecar(
            run.out / FIELD_SIDECAR,
            {
                "image": FIELD_IMAGE,
                "quantity": "psi",
                "scale": {
                    "mode": "fixed" if scale_min is not None or scale_max is not None else "auto",
                    "min": low,
                    "max": high,
                    "maxval": MAXVAL_16BIT,
                },
                "field_min": float(grid.psi.min()),
                "field_max": float(grid.psi.max()),
                "wavelength": float(grid.wavelength),
                "wavenumber": float(grid.wavenumber),
                "lower": [float(v) for v in grid.spec.lower],
                "upper": [float(v) for v in grid.spec.upper],
                "resolution": [int(v) for v in grid.spec.resolution],
                "orientation": "row 0 is the upper y edge; column 0 is the lower x edge",
                "config": run.config.to_dict(),
            },
        )
        message(f"Wrote {run.out / FIELD_IMAGE} (psi in [{low:.6e}, {high:.6e}])", MessageType.SUCCESS)

    @staticmethod
    def write_raw(run: RunContext, grid: FieldGrid) -> None:
        """Store all three planes in physical units; array axes follow GridSpec.shape."""
        np.savez(
            run.out / FIELD_RAW,
            psi=grid.psi,
            grad_norm=grid.grad_norm,
            min_eig=grid.min_eig,
            lower=np.asarray(grid.spec.lower, dtype=float),
            upper=np.asarray(grid.spec.upper, dtype=float),
            resolution=np.asarray(grid.spec.resolution, dtype=int),
            wavenumber=np.float64(grid.wavenumber),
        )
        message(f"Wrote {run.out / FIELD_RAW}", MessageType.SUCCESS)
