"""Complex pressure field of a superposition of plane waves.

A wave configuration is a set of N wavevectors k_j of common magnitude k
together with complex amplitudes (alpha_j, beta_j). The field is

    p(x) = sum_j alpha_j exp(i k_j.x) + beta_j exp(-i k_j.x)

Every derivative of a plane wave multiplies it by +-i k_j, so the whole
jet (p, grad p, Hess p, third derivatives) is assembled from two weighted
sums per wave: the "even" combination alpha E + beta/E and the "odd"
combination alpha E - beta/E, with E = exp(i k_j.x). Only one complex
exponential is evaluated per wave and point.

All evaluators accept a flat batch of points with shape (M, d). Sums run in
a fixed order per point so a value never depends on how a batch was split.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError

SUPPORTED_DIMENSIONS = (2, 3)
WAVENUMBER_RTOL = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class WaveConfig:
    """Wavevectors and drive amplitudes of a plane-wave superposition.

    Attributes:
        wavenumber: Common magnitude k of every wavevector (rad/m)
        wavevectors: Matrix K of shape (d, N); column j is k_j
        alphas: Complex amplitudes of the exp(+i k_j.x) terms, shape (N,)
        betas: Complex amplitudes of the exp(-i k_j.x) terms, shape (N,)
    """

    wavenumber: float
    wavevectors: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray

    def __post_init__(self):
        wavevectors = np.asarray(self.wavevectors, dtype=float)
        alphas = np.asarray(self.alphas, dtype=complex).reshape(-1)
        betas = np.asarray(self.betas, dtype=complex).reshape(-1)
        wavenumber = float(self.wavenumber)

        if wavevectors.ndim != 2:
            raise DimensionError(f"wavevectors must be a (d, N) matrix, got shape {wavevectors.shape}")
        dimension, count = wavevectors.shape
        if dimension not in SUPPORTED_DIMENSIONS:
            raise DimensionError(f"dimension must be one of {SUPPORTED_DIMENSIONS}, got {dimension}")
        if count < 1:
            raise ValidationError("at least one wavevector is required")
        if not np.isfinite(wavenumber) or wavenumber <= 0:
            raise ValidationError(f"wavenumber must be positive and finite, got {wavenumber}")
        if not np.all(np.isfinite(wavevectors)):
            raise ValidationError("wavevectors must be finite")
        if alphas.shape != (count,) or betas.shape != (count,):
            raise DimensionError(
                f"expected {count} amplitude pairs, got {alphas.shape[0]} alphas and {betas.shape[0]} betas"
            )
        if not (np.all(np.isfinite(alphas)) and np.all(np.isfinite(betas))):
            raise ValidationError("amplitudes must be finite")

        norms = np.linalg.norm(wavevectors, axis=0)
        for index, norm in enumerate(norms):
            if abs(norm - wavenumber) > WAVENUMBER_RTOL * wavenumber:
                raise ValidationError(f"wavevector {index} has magnitude {norm!r}, expected wavenumber {wavenumber!r}")
        for index in range(count):
            if alphas[index] == 0 and betas[index] == 0:
                raise ValidationError(f"wave {index} has both amplitudes equal to zero")

        object.__setattr__(self, "wavenumber", wavenumber)
        object.__setattr__(self, "wavevectors", _frozen(wavevectors))
        object.__setattr__(self, "alphas", _frozen(alphas))
        object.__setattr__(self, "betas", _frozen(betas))

    @classmethod
    def from_directions(
        cls,
        directions,
        wavenumber: float,
        alphas=None,
        betas=None,
    ) -> "WaveConfig":
        """Build a configuration from propagation directions (columns, any length).

        Missing amplitudes default to one.
        """
        directions = np.asarray(directions, dtype=float)
        if directions.ndim != 2:
            raise DimensionError(f"directions must be a (d, N) matrix, got shape {directions.shape}")
        norms = np.linalg.norm(directions, axis=0)
        if np.any(norms == 0):
            raise ValidationError("directions must be nonzero")
        count = directions.shape[1]
        alphas = np.ones(count) if alphas is None else alphas
        betas = np.ones(count) if betas is None else betas
        return cls(wavenumber, wavenumber * directions / norms, alphas, betas)

    @property
    def dimension(self) -> int:
        return self.wavevectors.shape[0]

    @property
    def count(self) -> int:
        return self.wavevectors.shape[1]

    @property
    def wavelength(self) -> float:
        return 2 * np.pi / self.wavenumber

    @property
    def amplitude_norm(self) -> float:
        """Sum of |alpha_j| + |beta_j|, an upper bound on |p|."""
        return float(np.abs(self.alphas).sum() + np.abs(self.betas).sum())

    @property
    def drive_vector(self) -> np.ndarray:
        """Transducer operating parameters u = [alpha_1..alpha_N, beta_1..beta_N]."""
        return np.concatenate([self.alphas, self.betas])

    def with_amplitudes(self, alphas, betas) -> "WaveConfig":
        return WaveConfig(self.wavenumber, self.wavevectors, alphas, betas)

    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.wavevectors, tol=1e-9 * self.wavenumber))

    def active_basis(self) -> np.ndarray | None:
        """Orthonormal basis of range(K) when K is rank deficient, else None.

        The field only depends on x through K^T x, so it is constant along
        null(K^T). Curvature tests are restricted to range(K).
        """
        rank = self.rank()
        if rank == self.dimension:
            return None
        left, _, _ = np.linalg.svd(self.wavevectors)
        return _frozen(left[:, :rank])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WaveConfig):
            return NotImplemented
        return (
            self.wavenumber == other.wavenumber
            and np.array_equal(self.wavevectors, other.wavevectors)
            and np.array_equal(self.alphas, other.alphas)
            and np.array_equal(self.betas, other.betas)
        )

    def __hash__(self) -> int:
        return hash((self.wavenumber, self.wavevectors.tobytes(), self.alphas.tobytes(), self.betas.tobytes()))

    def __repr__(self) -> str:
        return f"WaveConfig(d={self.dimension}, N={self.count}, k={self.wavenumber:g})"


@dataclass(frozen=True)
class FieldSample:
    """Pressure and pressure gradient at a single point."""

    p: complex
    grad_p: np.ndarray


@dataclass(frozen=True)
class FieldJet:
    """Batch of field derivatives up to some order; higher orders may be None.

    Shapes: p (M,), grad (M, d), hess (M, d, d), third (M, d, d, d).
    """

    p: np.ndarray
    grad: np.ndarray | None = None
    hess: np.ndarray | None = None
    third: np.ndarray | None = None


def as_points(points, dimension: int) -> np.ndarray:
    """Coerce a point or a batch of points to a (M, dimension) float array."""
    points = np.asarray(points, dtype=float)
    if points.ndim == 1:
        points = points[None, :]
    if points.ndim != 2 or points.shape[1] != dimension:
        raise DimensionError(f"points must have {dimension} coordinates, got array of shape {points.shape}")
    if not np.all(np.isfinite(points)):
        raise ValidationError("points must be finite")
    return points


def project(points: np.ndarray, wavevectors: np.ndarray) -> np.ndarray:
    """Map points x (M, d) to K^T x (M, N)."""
    projected = np.zeros((points.shape[0], wavevectors.shape[1]))
    for axis in range(wavevectors.shape[0]):
        projected += points[:, axis, None] * wavevectors[axis]
    return projected


def _weighted_sum(terms: np.ndarray, weights: np.ndarray) -> np.ndarray:
    total = terms[:, 0] * weights[0]
    for index in range(1, terms.shape[1]):
        total = total + terms[:, index] * weights[index]
    return total


def plane_wave_jet(wavevectors, alphas, betas, points: np.ndarray, order: int = 2) -> FieldJet:
    """Evaluate p and its derivatives up to ``order`` (0..3) at a batch of points.

    This is the kernel behind every field evaluation. It takes raw arrays so
    that the lifted N-dimensional field (identity wavevectors) shares it.
    """
    wavevectors = np.asarray(wavevectors, dtype=float)
    dimension, count = wavevectors.shape
    carrier = np.exp(1j * project(points, wavevectors))
    forward = alphas * carrier
    backward = betas * np.conj(carrier)
    even = forward + backward
    odd = forward - backward

    p = _weighted_sum(even, np.ones(count))
    grad = hess = third = None

    if order >= 1:
        grad = np.empty((points.shape[0], dimension), dtype=complex)
        for i in range(dimension):
            grad[:, i] = 1j * _weighted_sum(odd, wavevectors[i])

    if order >= 2:
        hess = np.empty((points.shape[0], dimension, dimension), dtype=complex)
        for i in range(dimension):
            for j in range(i, dimension):
                hess[:, i, j] = -_weighted_sum(even, wavevectors[i] * wavevectors[j])
                hess[:, j, i] = hess[:, i, j]

    if order >= 3:
        third = np.empty((points.shape[0], dimension, dimension, dimension), dtype=complex)
        for i in range(dimension):
            for j in range(i, dimension):
                for m in range(j, dimension):
                    value = -1j * _weighted_sum(odd, wavevectors[i] * wavevectors[j] * wavevectors[m])
                    for a, b, c in {(i, j, m), (i, m, j), (j, i, m), (j, m, i), (m, i, j), (m, j, i)}:
                        third[:, a, b, c] = value

    return FieldJet(p=p, grad=grad, hess=hess, third=third)


def field_jet(cfg: WaveConfig, points, order: int = 2) -> FieldJet:
    """Batch evaluation of the field jet of ``cfg`` at points of shape (M, d)."""
    points = as_points(points, cfg.dimension)
    return plane_wave_jet(cfg.wavevectors, cfg.alphas, cfg.betas, points, order)


def periodic_jet(cfg: WaveConfig, lifted_points, order: int = 2) -> FieldJet:
    """Field jet of the N-dimensional periodic field p_N at points of shape (M, N)."""
    lifted_points = as_points(lifted_points, cfg.count)
    return plane_wave_jet(np.eye(cfg.count), cfg.alphas, cfg.betas, lifted_points, order)


def evaluate_field(cfg: WaveConfig, x) -> complex:
    """Pressure p(x) at a single point."""
    return complex(field_jet(cfg, x, order=0).p[0])


def evaluate_field_derivatives(cfg: WaveConfig, x) -> tuple[complex, np.ndarray, np.ndarray]:
    """Return (p, grad p, Hess p) at a single point in one pass."""
    jet = field_jet(cfg, x, order=2)
    return complex(jet.p[0]), jet.grad[0], jet.hess[0]


def evaluate_field_sample(cfg: WaveConfig, x) -> FieldSample:
    jet = field_jet(cfg, x, order=1)
    return FieldSample(p=complex(jet.p[0]), grad_p=jet.grad[0])


def evaluate_periodic_field(cfg: WaveConfig, y) -> complex:
    """p_N(y) = sum_j alpha_j exp(i y_j) + beta_j exp(-i y_j), periodic with period 2*pi per axis."""
    return complex(periodic_jet(cfg, y, order=0).p[0])
