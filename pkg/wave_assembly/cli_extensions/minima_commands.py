"""CLI commands for trap sites: grid minima with Newton refinement, and particle relaxation."""

import argparse

import numpy as np

from wave_assembly.core import (
    MinimaError,
    ValidationError,
    detect_minima,
    evaluate_arp_grid,
    refine_minima,
    relax_particles,
)
from wave_assembly.core.minima import RELAX_MAX_ITER, MinimaSet
from wave_assembly.output import MessageType, VerbosityLevel, message, timed
from wave_assembly.utils.formats import write_minima_csv, write_trajectories_csv

from .common import RunContext, common_arguments, prepare_run, skipped_output

MINIMA_CSV = "minima.csv"
TRAJECTORIES_CSV = "trajectories.csv"
DEFAULT_PARTICLES = 100


def find_minima(run: RunContext) -> tuple[MinimaSet, MinimaSet]:
    """Sweep the configured grid and return (grid minima, refined minima)."""
    spec = run.config.grid_spec(run.dimension)
    with timed("Grid sweep"):
        grid = evaluate_arp_grid(run.wave, run.coefficients, spec, threads=run.config.threads)
    detected = detect_minima(grid, run.config.criteria)
    message(f"{len(detected)} grid cells pass the minimum criteria", MessageType.INFO, VerbosityLevel.VERBOSE)
    with timed("Refinement"):
        refined = refine_minima(run.wave, run.coefficients, detected, box=spec)
    return detected, refined


class MinimaCommands:
    """Manages the minima and relax commands."""

    @staticmethod
    def add_cli_arguments(subparsers) -> None:
        subparsers.add_parser(
            "minima",
            parents=[common_arguments()],
            help="Detect grid minima of psi, refine them and write minima.csv",
        )

        relax_parser = subparsers.add_parser(
            "relax",
            parents=[common_arguments()],
            help="Move particles down the potential from random seeds and write trajectories.csv",
        )
        relax_parser.add_argument(
            "--particles", type=int, default=DEFAULT_PARTICLES, metavar="N", help="Number of seeds, uniform in the grid box"
        )
        relax_parser.add_argument("--iters", type=int, default=RELAX_MAX_ITER, metavar="N", help="Maximum steps")
        relax_parser.add_argument("--step", type=float, metavar="ETA", help="Initial step size (default: from psi scale)")
        relax_parser.add_argument("--final-only", action="store_true", help="Write only the final positions")

    @staticmethod
    def process_cli_command(args: argparse.Namespace) -> None:
        if args.command == "minima":
            MinimaCommands.minima(args)
        elif args.command == "relax":
            MinimaCommands.relax(args)

    @staticmethod
    def minima(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        detected, refined = find_minima(run)
        if len(detected) and not len(refined):
            raise MinimaError(f"none of the {len(detected)} grid minima could be refined")
        message(f"{len(detected)} grid minima, {len(refined)} refined ({refined.skipped} skipped)", MessageType.INFO)
        if skipped_output(run, "minima_csv"):
            return

        path = run.out / MINIMA_CSV
        rows = write_minima_csv(path, [detected, refined], run.wave.wavelength, run.dimension)
        message(f"Wrote {path} ({rows} rows)", MessageType.SUCCESS)

    @staticmethod
    def relax(args: argparse.Namespace) -> None:
        run = prepare_run(args)
        if args.particles < 1:
            raise ValidationError(f"--particles must be at least 1, got {args.particles}")
        spec = run.config.grid_spec(run.dimension)
        rng = np.random.default_rng(run.config.seed)
        seeds = rng.uniform(spec.lower, spec.upper, size=(args.particles, run.dimension))

        with timed("Relaxation"):
            result = relax_particles(
                run.wave, run.coefficients, seeds, step=args.step, iters=args.iters, record=not args.final_only
            )

        settled = int(result.converged.sum())
        if settled < args.particles:
            message(
                f"{args.particles - settled} particles still moving after {result.iterations} steps "
                f"(largest |grad psi| = {float(result.grad_norm.max()):.3e})",
                MessageType.WARNING,
                VerbosityLevel.ALWAYS,
            )
        message(f"{settled}/{args.particles} particles at rest after {result.iterations} steps", MessageType.INFO)
        if skipped_output(run, "trajectories_csv"):
            return

        path = run.out / TRAJECTORIES_CSV
        write_trajectories_csv(path, result, run.dimension)
        message(f"Wrote {path}", MessageType.SUCCESS)
