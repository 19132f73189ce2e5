"""Wavevector arrangements, periodicity classification and symmetry checks.

A superposition whose wavevectors generate a discrete lattice (integer span
of rank at most d) yields a periodic potential. Otherwise the potential is
the restriction of the N-dimensional periodic psi_N to the d-dimensional
slice y = K^T x, which makes it quasiperiodic.
"""

import itertools
import math
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

import numpy as np
from scipy.stats import qmc

from wave_assembly.output import MessageType, VerbosityLevel, message

from .errors import DimensionError, UnsupportedDimensionError, ValidationError
from .field import SUPPORTED_DIMENSIONS, WAVENUMBER_RTOL, WaveConfig
from .potential import ArpCoefficients, arp_jet

DEFAULT_QMAX = 64
DUPLICATE_RTOL = 1e-9
BASIS_VOLUME_RTOL = 1e-6
RATIONAL_FIT_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class WavevectorMatrix:
    """Matrix K whose columns are the wavevectors k_1..k_N of magnitude k."""

    K: np.ndarray
    wavenumber: float

    def __post_init__(self):
        K = np.array(self.K, dtype=float)
        k = float(self.wavenumber)
        if K.ndim != 2 or K.shape[0] not in SUPPORTED_DIMENSIONS:
            raise DimensionError(f"K must be a (d, N) matrix with d in {SUPPORTED_DIMENSIONS}, got shape {K.shape}")
        if K.shape[1] < 1:
            raise ValidationError("K needs at least one column")
        if not np.isfinite(k) or k <= 0:
            raise ValidationError(f"wavenumber must be positive and finite, got {k}")

        for index, norm in enumerate(np.linalg.norm(K, axis=0)):
            if abs(norm - k) > WAVENUMBER_RTOL * k:
                raise ValidationError(f"column {index} has magnitude {norm!r}, expected {k!r}")
        for i, j in itertools.combinations(range(K.shape[1]), 2):
            if np.linalg.norm(K[:, i] - K[:, j]) <= DUPLICATE_RTOL * k:
                raise ValidationError(f"columns {i} and {j} are equal")
            if np.linalg.norm(K[:, i] + K[:, j]) <= DUPLICATE_RTOL * k:
                raise ValidationError(f"columns {i} and {j} are antipodal")

        K.setflags(write=False)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "wavenumber", k)

    @classmethod
    def from_config(cls, cfg: WaveConfig) -> "WavevectorMatrix":
        return cls(cfg.wavevectors, cfg.wavenumber)

    @property
    def dimension(self) -> int:
        return self.K.shape[0]

    @property
    def count(self) -> int:
        return self.K.shape[1]

    def rotated(self, theta: float) -> "WavevectorMatrix":
        """Rotate every column by ``theta`` about the origin (2-D only)."""
        if self.dimension != 2:
            raise UnsupportedDimensionError("rotation by an angle is only defined in 2-D")
        return WavevectorMatrix(rotation_matrix(theta) @ self.K, self.wavenumber)


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def polygon_wavevectors(pairs: int, wavenumber: float) -> WavevectorMatrix:
    """Columns k (cos(j pi / N), sin(j pi / N)) for j = 0..N-1.

    With the counter-propagating beta terms the N pairs cover the 2N
    directions of a regular 2N-gon.
    """
    if pairs < 1:
        raise ValidationError(f"a polygon needs at least one wave pair, got {pairs}")
    angles = np.arange(pairs) * np.pi / pairs
    return WavevectorMatrix(wavenumber * np.vstack([np.cos(angles), np.sin(angles)]), wavenumber)


class Periodicity(StrEnum):
    PERIODIC = "periodic"
    QUASIPERIODIC = "quasiperiodic"


@dataclass(frozen=True, eq=False)
class PeriodicityResult:
    """Outcome of ``classify_periodicity``.

    For periodic sets, ``basis`` indexes the columns spanning the lattice,
    ``coefficients[s][j]`` expresses column j in that basis and
    ``translations`` holds one lattice translation T per basis column
    (shape (d, r)); psi(x + T) = psi(x) for each of them.
    """

    kind: Periodicity
    qmax: int
    basis: tuple[int, ...] = ()
    coefficients: tuple[tuple[Fraction, ...], ...] = ()
    translations: np.ndarray | None = field(default=None)

    @property
    def is_periodic(self) -> bool:
        return self.kind is Periodicity.PERIODIC

    def witness_lines(self) -> list[str]:
        """Human-readable rational combinations for every non-basis column."""
        lines = []
        if not self.is_periodic:
            return lines
        count = len(self.coefficients[0]) if self.coefficients else 0
        for j in range(count):
            if j in self.basis:
                continue
            terms = [
                f"{self.coefficients[s][j]} k{index + 1}"
                for s, index in enumerate(self.basis)
                if self.coefficients[s][j] != 0
            ]
            lines.append(f"k{j + 1} = " + (" + ".join(terms) if terms else "0"))
        return lines


def _rational_fit(
    K: np.ndarray, basis: tuple[int, ...], qmax: int, tolerance: float
) -> tuple[tuple[Fraction, ...], ...] | None:
    sub = K[:, basis]
    solved, *_ = np.linalg.lstsq(sub, K, rcond=None)
    rational = [[Fraction(float(value)).limit_denominator(qmax) for value in row] for row in solved]
    approx = sub @ np.array([[float(value) for value in row] for row in rational])
    if np.max(np.abs(approx - K)) > tolerance:
        return None
    return tuple(tuple(row) for row in rational)


def classify_periodicity(K: WavevectorMatrix, qmax: int = DEFAULT_QMAX) -> PeriodicityResult:
    """Decide whether the integer span of the columns of K is a lattice.

    Column subsets of size rank(K) with non-negligible volume are tried in
    order; the first one in which every column is a rational combination
    with denominators at most ``qmax`` proves periodicity. When none fits
    the set is reported quasiperiodic up to ``qmax``.
    """
    if qmax < 1:
        raise ValidationError(f"qmax must be at least 1, got {qmax}")
    k = K.wavenumber
    rank = int(np.linalg.matrix_rank(K.K, tol=RATIONAL_FIT_RTOL * k))

    for basis in itertools.combinations(range(K.count), rank):
        sub = K.K[:, basis]
        volume = math.sqrt(max(np.linalg.det(sub.T @ sub), 0.0))
        if volume <= BASIS_VOLUME_RTOL * k**rank:
            continue
        coefficients = _rational_fit(K.K, basis, qmax, RATIONAL_FIT_RTOL * k)
        if coefficients is None:
            continue

        scale = math.lcm(*(value.denominator for row in coefficients for value in row))
        translations = 2 * np.pi * scale * np.linalg.pinv(sub.T)
        message(
            f"Lattice basis {tuple(i + 1 for i in basis)} fits all columns (common denominator {scale})",
            MessageType.DEBUG,
            VerbosityLevel.DEBUG,
        )
        return PeriodicityResult(
            kind=Periodicity.PERIODIC,
            qmax=qmax,
            basis=basis,
            coefficients=coefficients,
            translations=translations,
        )

    return PeriodicityResult(kind=Periodicity.QUASIPERIODIC, qmax=qmax)


def disk_samples(radius: float, samples: int, seed: int = 0) -> np.ndarray:
    """Low-discrepancy points in the disk |x| <= radius, shape (samples, 2)."""
    unit = qmc.Halton(d=2, scramble=True, seed=seed).random(samples)
    r = radius * np.sqrt(unit[:, 0])
    theta = 2 * np.pi * unit[:, 1]
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def rotational_symmetry_defect(
    cfg: WaveConfig,
    co: ArpCoefficients,
    order: int,
    radius: float,
    samples: int = 1024,
    seed: int = 0,
) -> float:
    """Relative change of psi under rotation by 2 pi / order about the origin.

    Returns max |psi(R x) - psi(x)| / max |psi| over ``samples`` points of the
    disk of the given radius. Zero means the sampled field is invariant.
    """
    if cfg.dimension != 2:
        raise UnsupportedDimensionError("rotational symmetry checks are only available in 2-D")
    if order < 1:
        raise ValidationError(f"symmetry order must be at least 1, got {order}")
    if samples < 8:
        raise ValidationError(f"at least 8 samples are required, got {samples}")
    if not np.isfinite(radius) or radius <= 0:
        raise ValidationError(f"radius must be positive, got {radius}")
    if order == 1:
        return 0.0

    points = disk_samples(radius, samples, seed)
    rotated = points @ rotation_matrix(2 * np.pi / order).T
    psi = arp_jet(cfg, co, points, order=0).psi
    psi_rotated = arp_jet(cfg, co, rotated, order=0).psi

    scale = max(np.max(np.abs(psi)), np.max(np.abs(psi_rotated)))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(psi_rotated - psi)) / scale)
