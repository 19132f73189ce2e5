"""Text formats: CSV exports, sidecar metadata and correspondence files.

CSV files use LF line endings, '.' as decimal separator and a fixed
``%.12e`` float format, so identical values always produce identical bytes.
"""

import csv
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from wave_assembly.core.errors import ValidationError
from wave_assembly.core.imaging import AgreementPoint
from wave_assembly.core.minima import MinimaSet, MinimumRecord, RelaxationResult

FLOAT_FORMAT = "{:.12e}"
UNDEFINED = "undefined"
AXES = ("x", "y", "z")


def format_float(value: float) -> str:
    return FLOAT_FORMAT.format(float(value))


def _writer(f):
    return csv.writer(f, lineterminator="\n")


def write_minima_csv(path: str | Path, sets: Iterable[MinimaSet], wavelength: float, dimension: int = 2) -> int:
    """Write minima rows "x,y[,z],psi,grad_norm,min_eig,refined"; returns the row count.

    The first line is a comment stating units. ``refined`` is 1 for
    Newton-refined points and 0 for raw grid cells.
    """
    columns = [*AXES[:dimension], "psi", "grad_norm", "min_eig", "refined"]
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(
            f"# positions in m, psi in coefficient units, grad_norm per m, min_eig per m^2; "
            f"wavelength={format_float(wavelength)} m\n"
        )
        writer = _writer(f)
        writer.writerow(columns)
        for minima in sets:
            for record in minima:
                writer.writerow(
                    [
                        *(format_float(v) for v in record.location),
                        format_float(record.psi),
                        format_float(record.grad_norm),
                        format_float(record.min_eig),
                        int(record.refined),
                    ]
                )
                rows += 1
    return rows


def read_minima_csv(path: str | Path, refined_only: bool = True) -> MinimaSet:
    """Load minima written by ``write_minima_csv``."""
    records = []
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(line for line in f if not line.startswith("#"))
        header = next(reader, None)
        if header is None or header[-4:] != ["psi", "grad_norm", "min_eig", "refined"]:
            raise ValidationError(f"{path}: not a minima CSV (header {header!r})")
        dimension = len(header) - 4
        for row_number, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise ValidationError(f"{path}: row {row_number} has {len(row)} fields, expected {len(header)}")
            try:
                values = [float(v) for v in row[:-1]]
                refined = row[-1] == "1"
            except ValueError as e:
                raise ValidationError(f"{path}: row {row_number}: {e}") from e
            if refined_only and not refined:
                continue
            records.append(
                MinimumRecord(
                    location=np.array(values[:dimension]),
                    psi=values[dimension],
                    grad_norm=values[dimension + 1],
                    min_eig=values[dimension + 2],
                    refined=refined,
                )
            )
    return MinimaSet(records=tuple(records), dimension=dimension)


def write_trajectories_csv(path: str | Path, result: RelaxationResult, dimension: int = 2) -> None:
    """Write "particle,step,x,y[,z],psi" rows, or final positions when no trajectory was recorded."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = _writer(f)
        writer.writerow(["particle", "step", *AXES[:dimension], "psi"])
        if result.trajectories is None:
            for particle, (position, psi) in enumerate(zip(result.positions, result.psi, strict=True)):
                writer.writerow([particle, result.iterations, *(format_float(v) for v in position), format_float(psi)])
            return
        for particle in range(result.trajectories.shape[1]):
            for step in range(result.trajectories.shape[0]):
                writer.writerow(
                    [
                        particle,
                        step,
                        *(format_float(v) for v in result.trajectories[step, particle]),
                        format_float(result.psi_history[step, particle]),
                    ]
                )


def write_curve_csv(path: str | Path, points: Iterable[AgreementPoint]) -> None:
    """Write "alpha,diameter_px,agreement_pct"; undefined overlaps are written as 'undefined'."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = _writer(f)
        writer.writerow(["alpha", "diameter_px", "agreement_pct"])
        for point in points:
            agreement = UNDEFINED if point.agreement is None else format_float(point.agreement)
            writer.writerow([format_float(point.alpha), format_float(point.diameter_px), agreement])


def read_correspondences(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Parse "sx sy tx ty" lines; '#' starts a comment and blank lines are ignored.

    Returns (source, target) arrays of shape (M, 2).
    """
    source, target = [], []
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            content = line.split("#", 1)[0].strip()
            if not content:
                continue
            fields = content.split()
            if len(fields) != 4:
                raise ValidationError(f"{path}:{line_number}: expected 'sx sy tx ty', got {content!r}")
            try:
                sx, sy, tx, ty = (float(v) for v in fields)
            except ValueError as e:
                raise ValidationError(f"{path}:{line_number}: {e}") from e
            source.append((sx, sy))
            target.append((tx, ty))
    return np.array(source).reshape(-1, 2), np.array(target).reshape(-1, 2)


def write_sidecar(path: str | Path, metadata: dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yaml.safe_dump(metadata, f, default_flow_style=None, sort_keys=False)


def read_sidecar(path: str | Path) -> dict[str, Any]:
    with open(path, encoding="utf-8") as f:
        return yaml.safe_load(f) or {}
