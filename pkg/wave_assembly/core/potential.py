"""Acoustic radiation potential (ARP) of a plane-wave superposition.

The potential is

    psi(x) = a |p(x)|^2 - grad p(x)^* B grad p(x)

with a = f1 kappa0 / 4 and B = 3 f2 / (8 rho0 omega^2) I_d for a small
compressible sphere in an inviscid fluid, or B = 0 for the optical case.
A particle feels the force F = -grad psi and collects at minima of psi.

The gradient and Hessian of psi are assembled analytically from the field
jet, using third derivatives of p for the Hessian.
"""

from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from wave_assembly.output import MessageType, VerbosityLevel, message

from .batch import DEFAULT_CHUNK_SIZE, run_chunked
from .errors import DimensionError, ValidationError
from .field import FieldJet, WaveConfig, as_points, field_jet, periodic_jet, project


class ArpMode(StrEnum):
    """Which gradient term the potential carries."""

    ACOUSTIC = "acoustic"
    OPTICAL = "optical"


@dataclass(frozen=True)
class MaterialParams:
    """Fluid and particle properties that fix the ARP coefficients.

    Attributes:
        rho0: Fluid density (kg/m^3)
        c0: Fluid sound speed (m/s)
        rho_p: Particle density (kg/m^3)
        c_p: Particle sound speed (m/s)
        omega: Angular frequency (rad/s)
    """

    rho0: float
    c0: float
    rho_p: float
    c_p: float
    omega: float

    def __post_init__(self):
        errors = [
            f"{name} must be positive and finite, got {getattr(self, name)!r}"
            for name in ("rho0", "c0", "rho_p", "c_p", "omega")
            if not (np.isfinite(getattr(self, name)) and getattr(self, name) > 0)
        ]
        if errors:
            raise ValidationError("; ".join(errors))

    @classmethod
    def water_carbon(cls, frequency: float = 1.0e6) -> "MaterialParams":
        """Carbon nanoparticles dispersed in water, driven at ``frequency`` Hz."""
        return cls(rho0=1000.0, c0=1500.0, rho_p=2100.0, c_p=5300.0, omega=2 * np.pi * frequency)

    @property
    def kappa0(self) -> float:
        return 1.0 / (self.rho0 * self.c0**2)

    @property
    def kappa_p(self) -> float:
        return 1.0 / (self.rho_p * self.c_p**2)

    @property
    def f1(self) -> float:
        return 1.0 - self.kappa_p / self.kappa0

    @property
    def f2(self) -> float:
        return 2.0 * (self.rho_p - self.rho0) / (2.0 * self.rho_p + self.rho0)

    @property
    def wavenumber(self) -> float:
        return self.omega / self.c0


@dataclass(frozen=True, eq=False)
class ArpCoefficients:
    """Scalar a and symmetric d x d matrix B of the potential.

    B is required to be symmetric; its sign follows f2, so it is negative for
    particles lighter than the fluid.
    """

    a: float
    B: np.ndarray
    mode: ArpMode = ArpMode.ACOUSTIC

    def __post_init__(self):
        B = np.array(self.B, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise DimensionError(f"B must be a square matrix, got shape {B.shape}")
        if not (np.isfinite(self.a) and np.all(np.isfinite(B))):
            raise ValidationError("ARP coefficients must be finite")
        if not np.array_equal(B, B.T):
            raise ValidationError("B must be symmetric")
        mode = ArpMode(self.mode)
        if mode is ArpMode.OPTICAL and np.any(B != 0):
            raise ValidationError("optical mode requires B to be exactly zero")
        B.setflags(write=False)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "mode", mode)

    @classmethod
    def direct(cls, a: float, b, dimension: int, mode: ArpMode = ArpMode.ACOUSTIC) -> "ArpCoefficients":
        """Coefficients set by value; a scalar ``b`` means b * I_d."""
        B = np.asarray(b, dtype=float)
        if B.ndim == 0:
            B = float(B) * np.eye(dimension)
        return cls(a, B, mode)

    @property
    def dimension(self) -> int:
        return self.B.shape[0]

    @property
    def has_gradient_term(self) -> bool:
        return bool(np.any(self.B != 0))

    def lifted(self, wavevectors: np.ndarray) -> "ArpCoefficients":
        """Coefficients of psi_N: same a, B_N = K^T B K."""
        wavevectors = np.asarray(wavevectors, dtype=float)
        B_N = wavevectors.T @ self.B @ wavevectors
        B_N = 0.5 * (B_N + B_N.T)
        return ArpCoefficients(self.a, B_N, self.mode)

    def scale(self, cfg: WaveConfig) -> float:
        """Upper bound on |psi| for ``cfg``, used to turn relative tolerances into absolute ones."""
        spectral = float(np.max(np.abs(np.linalg.eigvalsh(self.B)))) if self.has_gradient_term else 0.0
        return (abs(self.a) + spectral * cfg.wavenumber**2) * cfg.amplitude_norm**2

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArpCoefficients):
            return NotImplemented
        return self.a == other.a and self.mode == other.mode and np.array_equal(self.B, other.B)

    def __hash__(self) -> int:
        return hash((self.a, self.B.tobytes(), self.mode))


def arp_coefficients(material: MaterialParams, dimension: int, mode: ArpMode = ArpMode.ACOUSTIC) -> ArpCoefficients:
    """Derive (a, B) from fluid and particle properties."""
    a = material.f1 * material.kappa0 / 4.0
    if ArpMode(mode) is ArpMode.OPTICAL:
        return ArpCoefficients(a, np.zeros((dimension, dimension)), ArpMode.OPTICAL)
    b = 3.0 * material.f2 / (8.0 * material.rho0 * material.omega**2)
    return ArpCoefficients(a, b * np.eye(dimension), ArpMode.ACOUSTIC)


@dataclass(frozen=True)
class ArpJet:
    """Batch of potential values; shapes psi (M,), grad (M, d), hess (M, d, d)."""

    psi: np.ndarray
    grad: np.ndarray | None = None
    hess: np.ndarray | None = None


def _apply(B: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """B v for a batch of vectors of shape (M, d)."""
    result = np.zeros_like(vectors)
    for m in range(B.shape[0]):
        for n in range(B.shape[1]):
            if B[m, n] != 0:
                result[:, m] = result[:, m] + B[m, n] * vectors[:, n]
    return result


def assemble_arp(a: float, B: np.ndarray, jet: FieldJet, order: int) -> ArpJet:
    """Combine a field jet into psi and, for ``order`` >= 1 and 2, its gradient and Hessian."""
    p, g = jet.p, jet.grad
    dimension = B.shape[0]
    gradient_term = bool(np.any(B != 0))

    psi = a * (p.real**2 + p.imag**2)
    Bg = None
    if gradient_term:
        Bg = _apply(B, g)
        psi = psi - np.real(np.conj(g) * Bg).sum(axis=1)

    grad = hess = None
    if order >= 1:
        grad = np.empty((p.shape[0], dimension))
        for i in range(dimension):
            grad[:, i] = 2 * a * np.real(np.conj(p) * g[:, i])
            if gradient_term:
                grad[:, i] -= 2 * np.real(np.conj(jet.hess[:, i, :]) * Bg).sum(axis=1)

    if order >= 2:
        hess = np.empty((p.shape[0], dimension, dimension))
        BH = None
        if gradient_term:
            BH = np.stack([_apply(B, jet.hess[:, :, j]) for j in range(dimension)], axis=2)
        for i in range(dimension):
            for j in range(i, dimension):
                value = 2 * a * np.real(np.conj(g[:, i]) * g[:, j] + np.conj(p) * jet.hess[:, i, j])
                if gradient_term:
                    third = np.real(np.conj(jet.third[:, i, j, :]) * Bg).sum(axis=1)
                    second = np.real(np.conj(jet.hess[:, i, :]) * BH[:, :, j]).sum(axis=1)
                    value = value - 2 * (third + second)
                hess[:, i, j] = value
                hess[:, j, i] = value

    return ArpJet(psi=psi, grad=grad, hess=hess)


def _check_dimension(cfg: WaveConfig, co: ArpCoefficients) -> None:
    if co.dimension != cfg.dimension:
        raise DimensionError(f"B is {co.dimension}x{co.dimension} but the wave configuration is {cfg.dimension}-D")


def arp_jet(cfg: WaveConfig, co: ArpCoefficients, points, order: int = 2) -> ArpJet:
    """Batch evaluation of psi (order 0), grad psi (1) and Hess psi (2) at points (M, d)."""
    _check_dimension(cfg, co)
    field_order = order + (1 if co.has_gradient_term else 0)
    return assemble_arp(co.a, co.B, field_jet(cfg, points, order=field_order), order)


def periodic_arp_jet(cfg: WaveConfig, co: ArpCoefficients, lifted_points, order: int = 0) -> ArpJet:
    """Batch evaluation of the lifted potential psi_N at points (M, N)."""
    _check_dimension(cfg, co)
    lifted = co.lifted(cfg.wavevectors)
    field_order = order + (1 if lifted.has_gradient_term else 0)
    return assemble_arp(lifted.a, lifted.B, periodic_jet(cfg, lifted_points, order=field_order), order)


def evaluate_arp(cfg: WaveConfig, co: ArpCoefficients, x) -> float:
    """psi(x) at a single point."""
    return float(arp_jet(cfg, co, x, order=0).psi[0])


def evaluate_arp_derivatives(cfg: WaveConfig, co: ArpCoefficients, x) -> tuple[float, np.ndarray, np.ndarray]:
    """Return (psi, grad psi, Hess psi) at a single point."""
    jet = arp_jet(cfg, co, x, order=2)
    return float(jet.psi[0]), jet.grad[0], jet.hess[0]


def evaluate_periodic_arp(cfg: WaveConfig, co: ArpCoefficients, y) -> float:
    """psi_N(y); psi(x) equals psi_N(K^T x)."""
    return float(periodic_arp_jet(cfg, co, y, order=0).psi[0])


def lift_points(cfg: WaveConfig, points) -> np.ndarray:
    """K^T x for a batch of points."""
    return project(as_points(points, cfg.dimension), cfg.wavevectors)


def min_eigenvalues(hess: np.ndarray, basis: np.ndarray | None = None) -> np.ndarray:
    """Smallest eigenvalue of each symmetric matrix, optionally restricted to span(basis)."""
    if basis is not None:
        hess = np.einsum("ia,mij,jb->mab", basis, hess, basis)
    return np.linalg.eigvalsh(hess)[:, 0]


@dataclass(frozen=True)
class GridSpec:
    """Axis-aligned box sampled by a uniform lattice.

    ``resolution`` holds the number of points per axis in (x, y[, z]) order.
    Planes sampled on the lattice are stored row-major with x varying
    fastest, i.e. with shape ``resolution[::-1]``.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    resolution: tuple[int, ...]

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        resolution = tuple(int(n) for n in self.resolution)
        if not (len(lower) == len(upper) == len(resolution)):
            raise DimensionError("grid corners and resolution must have the same length")
        if len(lower) not in (2, 3):
            raise DimensionError(f"grids are 2-D or 3-D, got {len(lower)} axes")
        for axis, (lo, hi, n) in enumerate(zip(lower, upper, resolution, strict=True)):
            if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
                raise ValidationError(f"degenerate grid box on axis {axis}: lower {lo} >= upper {hi}")
            if n < 2:
                raise ValidationError(f"grid needs at least 2 points per axis, got {n} on axis {axis}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "resolution", resolution)

    @classmethod
    def centered(cls, half_width: float, resolution: int, dimension: int = 2) -> "GridSpec":
        return cls((-half_width,) * dimension, (half_width,) * dimension, (resolution,) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.resolution)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.resolution[::-1]

    @property
    def size(self) -> int:
        return int(np.prod(self.resolution))

    @property
    def spacing(self) -> np.ndarray:
        return np.array([(hi - lo) / (n - 1) for lo, hi, n in zip(self.lower, self.upper, self.resolution, strict=True)])

    def axes(self) -> list[np.ndarray]:
        return [np.linspace(lo, hi, n) for lo, hi, n in zip(self.lower, self.upper, self.resolution, strict=True)]

    def points(self) -> np.ndarray:
        """All lattice points, shape (size, d), in row-major plane order."""
        mesh = np.meshgrid(*self.axes()[::-1], indexing="ij")
        return np.stack([axis.reshape(-1) for axis in mesh[::-1]], axis=1)

    def point(self, index: tuple[int, ...]) -> np.ndarray:
        """Coordinates of the plane cell at ``index`` (plane order, x last)."""
        return np.array([axis[i] for axis, i in zip(self.axes(), index[::-1], strict=True)])


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Potential sampled on a lattice: psi, |grad psi| and lambda_min(Hess psi) planes."""

    spec: GridSpec
    wavenumber: float
    psi: np.ndarray
    grad_norm: np.ndarray
    min_eig: np.ndarray

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    @property
    def wavelength(self) -> float:
        return 2 * np.pi / self.wavenumber

    @property
    def is_empty(self) -> bool:
        return self.psi.size == 0


def evaluate_arp_grid(
    cfg: WaveConfig,
    co: ArpCoefficients,
    spec: GridSpec,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> FieldGrid:
    """Sample psi, |grad psi| and lambda_min(Hess psi) on every lattice point.

    Points are split into chunks evaluated on up to ``threads`` workers; each
    chunk writes a disjoint slice of the preallocated planes.
    """
    _check_dimension(cfg, co)
    if spec.dimension != cfg.dimension:
        raise DimensionError(f"grid is {spec.dimension}-D but the wave configuration is {cfg.dimension}-D")

    points = spec.points()
    basis = cfg.active_basis()
    psi = np.empty(spec.size)
    grad_norm = np.empty(spec.size)
    min_eig = np.empty(spec.size)

    def evaluate(start: int, stop: int) -> None:
        jet = arp_jet(cfg, co, points[start:stop], order=2)
        psi[start:stop] = jet.psi
        grad_norm[start:stop] = np.sqrt((jet.grad**2).sum(axis=1))
        min_eig[start:stop] = min_eigenvalues(jet.hess, basis)

    message(
        f"Sweeping {'x'.join(map(str, spec.resolution))} grid ({spec.size} points) on {threads} thread(s)",
        MessageType.DEBUG,
        VerbosityLevel.DEBUG,
    )
    run_chunked(evaluate, spec.size, threads=threads, chunk_size=chunk_size)

    return FieldGrid(
        spec=spec,
        wavenumber=cfg.wavenumber,
        psi=psi.reshape(spec.shape),
        grad_norm=grad_norm.reshape(spec.shape),
        min_eig=min_eig.reshape(spec.shape),
    )
