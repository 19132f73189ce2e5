"""Locate particle-assembly sites as minima of the radiation potential.

Three complementary tools:

- ``detect_minima`` scans a sampled grid for cells where the Hessian is
  sufficiently positive definite and the gradient is small, reducing every
  connected cluster of passing cells to its lowest-psi cell. Every local psi
  minimum among the passing cells is kept as a refinement seed, because one
  cluster can span several basins.
- ``refine_minimum`` polishes a seed with damped Newton steps using the
  analytic gradient and Hessian.
- ``relax_particles`` moves test particles along F = -grad psi until they
  come to rest.

For rank-deficient wavevector sets (fewer independent directions than the
dimension) psi is constant along null(K^T); curvature and Newton steps are
then taken inside range(K) only.
"""

from dataclasses import dataclass, field, replace
from enum import StrEnum

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from wave_assembly.output import MessageType, VerbosityLevel, message

from .errors import DivergenceError, MinimaError, SaddleError, ValidationError
from .field import WaveConfig, as_points
from .potential import ArpCoefficients, FieldGrid, GridSpec, arp_jet, evaluate_arp_derivatives

DEFAULT_EIG_MIN = 1e-6
DEFAULT_GRAD_MAX = 4e11
DEFAULT_EIG_FRACTION = 1e-9
DEFAULT_GRAD_FRACTION = 1e-3
DEFAULT_GRID_SLACK = 1.5

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-12
NEWTON_STEP_FLOOR = 1e-14
NEWTON_MAX_HALVINGS = 30

RELAX_MAX_ITER = 2000
RELAX_TOL = 1e-7
RELAX_ETA_GROWTH = 1.1
RELAX_ETA_CAP = 16.0


class CriteriaMode(StrEnum):
    AUTO = "auto"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class MinimaCriteria:
    """Thresholds a grid cell must pass to count as a minimum.

    In ABSOLUTE mode ``eig_min`` and ``grad_max`` are used as given. In AUTO
    mode they are derived from the grid by ``resolve``:

        grad_max = max(grad_fraction, grid_slack k h sqrt(d)) * max |grad psi|
        eig_min  = eig_fraction * max lambda_min

    where h is the largest grid spacing. With the default grid_slack of 1.5
    the second grad_max term bounds the gradient at the cell closest to a
    true minimum, since psi is band-limited to wavenumber 2k. A grid_slack of
    0 leaves grad_max at grad_fraction * max |grad psi|.
    """

    mode: CriteriaMode = CriteriaMode.AUTO
    eig_min: float = DEFAULT_EIG_MIN
    grad_max: float = DEFAULT_GRAD_MAX
    eig_fraction: float = DEFAULT_EIG_FRACTION
    grad_fraction: float = DEFAULT_GRAD_FRACTION
    grid_slack: float = DEFAULT_GRID_SLACK

    def __post_init__(self):
        object.__setattr__(self, "mode", CriteriaMode(self.mode))
        for name in ("eig_min", "grad_max", "eig_fraction", "grad_fraction"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValidationError(f"{name} must be positive and finite, got {value!r}")
        if not (np.isfinite(self.grid_slack) and self.grid_slack >= 0):
            raise ValidationError(f"grid_slack must be non-negative and finite, got {self.grid_slack!r}")

    @classmethod
    def absolute(cls, eig_min: float = DEFAULT_EIG_MIN, grad_max: float = DEFAULT_GRAD_MAX) -> "MinimaCriteria":
        return cls(mode=CriteriaMode.ABSOLUTE, eig_min=eig_min, grad_max=grad_max)

    def resolve(self, grid: FieldGrid) -> "MinimaCriteria":
        """Return ABSOLUTE criteria with the thresholds applied to ``grid``."""
        if self.mode is CriteriaMode.ABSOLUTE:
            return self

        tiny = np.finfo(float).tiny
        grad_reference = float(np.max(grid.grad_norm))
        spacing = float(np.max(grid.spec.spacing))
        grad_factor = max(self.grad_fraction, self.grid_slack * grid.wavenumber * spacing * np.sqrt(grid.dimension))
        eig_reference = float(np.max(grid.min_eig))

        resolved = replace(
            self,
            mode=CriteriaMode.ABSOLUTE,
            eig_min=self.eig_fraction * eig_reference if eig_reference > 0 else tiny,
            grad_max=max(grad_factor * grad_reference, tiny),
        )
        message(
            f"Auto criteria: eig_min={resolved.eig_min:.6e}, grad_max={resolved.grad_max:.6e}",
            MessageType.DEBUG,
            VerbosityLevel.DEBUG,
        )
        return resolved

    def accepts(self, grad_norm: float, min_eig: float) -> bool:
        return min_eig > self.eig_min and grad_norm < self.grad_max


@dataclass(frozen=True, eq=False)
class MinimumRecord:
    """One assembly site with its diagnostics.

    ``refined`` tells whether the location is a raw grid cell or the result
    of Newton refinement.
    """

    location: np.ndarray
    psi: float
    grad_norm: float
    min_eig: float
    refined: bool = False


@dataclass(frozen=True, eq=False)
class RefinedMinimum(MinimumRecord):
    iterations: int = 0
    converged: bool = True


@dataclass(frozen=True, eq=False)
class MinimaSet:
    """Detected or refined minima together with the grid and criteria used.

    ``seeds`` holds the (S, d) starting points for refinement when they
    differ from the records, as they do for detected grid minima.
    """

    records: tuple[MinimumRecord, ...] = ()
    spec: GridSpec | None = None
    criteria: MinimaCriteria | None = None
    skipped: int = 0
    dimension: int = field(default=2)
    seeds: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index: int) -> MinimumRecord:
        return self.records[index]

    def points(self) -> np.ndarray:
        """Locations as an array of shape (M, d)."""
        if not self.records:
            return np.empty((0, self.dimension))
        return np.array([record.location for record in self.records])

    def seed_points(self) -> np.ndarray:
        return self.points() if self.seeds is None else self.seeds


def min_eigenvalue(hess: np.ndarray, basis: np.ndarray | None) -> float:
    if basis is not None:
        hess = basis.T @ hess @ basis
    return float(np.linalg.eigvalsh(hess)[0])


def _interior(shape: tuple[int, ...]) -> np.ndarray:
    mask = np.zeros(shape, dtype=bool)
    mask[tuple(slice(1, -1) for _ in shape)] = True
    return mask


def _local_minima(psi: np.ndarray, passing: np.ndarray, structure: np.ndarray) -> list[tuple[int, ...]]:
    """One cell per connected plateau of local psi minima among the passing cells."""
    masked = np.where(passing, psi, np.inf)
    lowest = ndimage.minimum_filter(masked, footprint=structure, mode="constant", cval=np.inf)
    local = passing & (masked == lowest)
    labels, count = ndimage.label(local, structure=structure)
    if count == 0:
        return []
    return ndimage.minimum_position(psi, labels, index=np.arange(1, count + 1))


def detect_minima(grid: FieldGrid, criteria: MinimaCriteria | None = None) -> MinimaSet:
    """Grid cells that pass ``criteria``, one per connected cluster.

    Cells on the outer ring of the grid are never reported. Clusters use full
    connectivity (8 neighbours in 2-D, 26 in 3-D). The returned set carries
    every local psi minimum of the passing cells as ``seeds``; a flat line
    or plateau of equal minima contributes one seed.
    """
    if grid.is_empty:
        raise ValidationError("cannot detect minima on an empty grid")
    criteria = (criteria or MinimaCriteria()).resolve(grid)

    passing = (grid.min_eig > criteria.eig_min) & (grid.grad_norm < criteria.grad_max) & _interior(grid.psi.shape)
    structure = np.ones((3,) * grid.dimension, dtype=bool)
    labels, count = ndimage.label(passing, structure=structure)
    if count == 0:
        message("No cell passes the minimum criteria", MessageType.DEBUG, VerbosityLevel.EXTRA_VERBOSE)
        return MinimaSet(spec=grid.spec, criteria=criteria, dimension=grid.dimension)

    positions = ndimage.minimum_position(grid.psi, labels, index=np.arange(1, count + 1))
    records = tuple(
        MinimumRecord(
            location=grid.spec.point(index),
            psi=float(grid.psi[index]),
            grad_norm=float(grid.grad_norm[index]),
            min_eig=float(grid.min_eig[index]),
        )
        for index in positions
    )
    seed_cells = _local_minima(grid.psi, passing, structure)
    seeds = np.array([grid.spec.point(index) for index in seed_cells]).reshape(-1, grid.dimension)
    message(
        f"{int(passing.sum())} cells pass the criteria in {count} cluster(s) holding {len(seeds)} local minima",
        MessageType.DEBUG,
        VerbosityLevel.EXTRA_VERBOSE,
    )
    return MinimaSet(records=records, spec=grid.spec, criteria=criteria, dimension=grid.dimension, seeds=seeds)


def _outside_by(x: np.ndarray, box: GridSpec) -> float:
    below = np.asarray(box.lower) - x
    above = x - np.asarray(box.upper)
    return float(np.max(np.maximum(np.maximum(below, above), 0.0)))


def refine_minimum(
    cfg: WaveConfig,
    co: ArpCoefficients,
    x0,
    box: GridSpec | None = None,
    max_iter: int = NEWTON_MAX_ITER,
    tol: float = NEWTON_TOL,
) -> RefinedMinimum:
    """Polish a seed into a strict local minimum with damped Newton steps.

    Iteration stops once |grad psi| <= tol * k * psi_scale or a step shrinks
    below 1e-14 wavelengths. Steps are clipped to a wavelength / 8; where the
    Hessian is not positive definite a descent step of a wavelength / 20 is
    taken instead. A step that still raises psi after 30 halvings is not
    taken, and the result is reported as not converged.

    Raises:
        DivergenceError: The iterate left ``box`` by more than a wavelength
        SaddleError: The iteration settled where the Hessian is not positive definite
    """
    if max_iter < 0:
        raise ValidationError(f"max_iter must be non-negative, got {max_iter}")
    x = as_points(x0, cfg.dimension)[0].copy()
    wavelength = cfg.wavelength
    basis = cfg.active_basis()
    Q = np.eye(cfg.dimension) if basis is None else basis
    gradient_scale = tol * cfg.wavenumber * co.scale(cfg)
    psi_slack = 1e-12 * co.scale(cfg)

    psi, grad, hess = evaluate_arp_derivatives(cfg, co, x)
    converged = False
    iterations = 0
    while True:
        g = Q.T @ grad
        if np.linalg.norm(g) <= gradient_scale:
            converged = True
            break
        if iterations >= max_iter:
            break

        H = Q.T @ hess @ Q
        eigenvalues = np.linalg.eigvalsh(H)
        if eigenvalues[0] > 0:
            step = -np.linalg.solve(H, g)
        else:
            step = -g / np.linalg.norm(g) * wavelength / 20
        length = np.linalg.norm(step)
        if length > wavelength / 8:
            step = step * (wavelength / 8 / length)
            length = wavelength / 8

        # Halve until psi does not increase
        for _ in range(NEWTON_MAX_HALVINGS):
            candidate = x + Q @ step
            candidate_psi = float(arp_jet(cfg, co, candidate, order=0).psi[0])
            if candidate_psi <= psi + psi_slack:
                break
            step = step / 2
            length = length / 2
        else:
            message(f"No descent step from {x} after {iterations} steps", MessageType.DEBUG, VerbosityLevel.DEBUG)
            break

        iterations += 1
        if box is not None and _outside_by(candidate, box) > wavelength:
            raise DivergenceError(f"Newton iteration left the analysis box at {candidate} after {iterations} steps")
        x = candidate
        psi, grad, hess = evaluate_arp_derivatives(cfg, co, x)
        if length <= NEWTON_STEP_FLOOR * wavelength:
            converged = True
            break

    min_eig = min_eigenvalue(hess, basis)
    if converged and min_eig <= 0:
        raise SaddleError(f"iteration from {x0} settled at {x} where lambda_min = {min_eig:.3e}")
    return RefinedMinimum(
        location=x,
        psi=psi,
        grad_norm=float(np.linalg.norm(grad)),
        min_eig=min_eig,
        refined=True,
        iterations=iterations,
        converged=converged,
    )


def deduplicate(records: list[MinimumRecord], radius: float) -> list[MinimumRecord]:
    """Drop records lying within ``radius`` of an earlier one."""
    if len(records) < 2 or radius <= 0:
        return list(records)
    tree = cKDTree(np.array([record.location for record in records]))
    keep = np.ones(len(records), dtype=bool)
    for i, neighbours in enumerate(tree.query_ball_point(tree.data, r=radius)):
        if not keep[i]:
            continue
        for j in neighbours:
            if j > i:
                keep[j] = False
    return [record for record, kept in zip(records, keep, strict=True) if kept]


def refine_minima(
    cfg: WaveConfig,
    co: ArpCoefficients,
    minima: MinimaSet,
    box: GridSpec | None = None,
    max_iter: int = NEWTON_MAX_ITER,
    tol: float = NEWTON_TOL,
) -> MinimaSet:
    """Refine every seed of ``minima``.

    Seeds that diverge, stall or land on a saddle are skipped and counted in
    ``MinimaSet.skipped``. Refined points closer than half a grid spacing are
    merged.
    """
    box = box or minima.spec
    seeds = minima.seed_points()
    refined: list[MinimumRecord] = []
    skipped = 0
    for seed in seeds:
        try:
            result = refine_minimum(cfg, co, seed, box=box, max_iter=max_iter, tol=tol)
        except MinimaError as e:
            message(f"Skipping seed {seed}: {e}", MessageType.DEBUG, VerbosityLevel.DEBUG)
            skipped += 1
            continue
        if not result.converged:
            message(
                f"Seed {seed} did not converge in {max_iter} steps (|grad psi| = {result.grad_norm:.3e})",
                MessageType.DEBUG,
                VerbosityLevel.DEBUG,
            )
            skipped += 1
            continue
        refined.append(result)

    radius = 0.5 * float(np.min(minima.spec.spacing)) if minima.spec is not None else 0.0
    kept = deduplicate(refined, radius)
    if skipped:
        message(f"{skipped} of {len(seeds)} seeds failed to refine", MessageType.WARNING, VerbosityLevel.VERBOSE)
    return MinimaSet(
        records=tuple(kept),
        spec=minima.spec,
        criteria=minima.criteria,
        skipped=skipped,
        dimension=cfg.dimension,
    )


@dataclass(frozen=True, eq=False)
class RelaxationResult:
    """Outcome of ``relax_particles``.

    ``trajectories`` has shape (steps + 1, M, d) and ``psi_history`` shape
    (steps + 1, M); both are None when recording was switched off.
    """

    positions: np.ndarray
    psi: np.ndarray
    grad_norm: np.ndarray
    converged: np.ndarray
    iterations: int
    trajectories: np.ndarray | None = None
    psi_history: np.ndarray | None = None

    @property
    def converged_positions(self) -> np.ndarray:
        return self.positions[self.converged]


def relax_particles(
    cfg: WaveConfig,
    co: ArpCoefficients,
    inits,
    step: float | None = None,
    iters: int = RELAX_MAX_ITER,
    tol: float = RELAX_TOL,
    record: bool = True,
) -> RelaxationResult:
    """Overdamped motion x <- x - eta grad psi(x) for a batch of particles.

    Every particle carries its own step size. A move that would raise psi is
    rejected and the step size halved; an accepted move grows it by 10%, up
    to 16 times the initial value. Moves are clipped to a wavelength / 20.
    A particle stops once |grad psi| <= tol * k * psi_scale.
    """
    positions = as_points(inits, cfg.dimension).copy()
    psi_scale = co.scale(cfg)
    k = cfg.wavenumber
    if step is None:
        step = 0.5 / (k**2 * psi_scale) if psi_scale > 0 else 1.0
    if not (np.isfinite(step) and step > 0):
        raise ValidationError(f"relaxation step must be positive, got {step!r}")
    if iters < 0:
        raise ValidationError(f"iters must be non-negative, got {iters}")

    count = positions.shape[0]
    max_move = cfg.wavelength / 20
    eta = np.full(count, float(step))
    eta_cap = RELAX_ETA_CAP * step
    threshold = tol * k * psi_scale

    jet = arp_jet(cfg, co, positions, order=1)
    psi, grad = jet.psi, jet.grad
    grad_norm = np.sqrt((grad**2).sum(axis=1))
    converged = grad_norm <= threshold

    trajectories = [positions.copy()] if record else None
    psi_history = [psi.copy()] if record else None

    iteration = 0
    while iteration < iters and not np.all(converged):
        iteration += 1
        active = ~converged
        moves = eta[active, None] * grad[active]
        lengths = np.sqrt((moves**2).sum(axis=1))
        too_long = lengths > max_move
        moves[too_long] *= (max_move / lengths[too_long])[:, None]

        candidates = positions[active] - moves
        trial = arp_jet(cfg, co, candidates, order=1)
        accept = trial.psi <= psi[active]

        indices = np.flatnonzero(active)
        moved = indices[accept]
        positions[moved] = candidates[accept]
        psi[moved] = trial.psi[accept]
        grad[moved] = trial.grad[accept]
        eta[moved] = np.minimum(eta[moved] * RELAX_ETA_GROWTH, eta_cap)
        eta[indices[~accept]] /= 2

        grad_norm = np.sqrt((grad**2).sum(axis=1))
        converged = grad_norm <= threshold
        if record:
            trajectories.append(positions.copy())
            psi_history.append(psi.copy())

    message(
        f"Relaxation: {int(converged.sum())}/{count} particles at rest after {iteration} steps",
        MessageType.DEBUG,
        VerbosityLevel.EXTRA_VERBOSE,
    )
    return RelaxationResult(
        positions=positions,
        psi=psi,
        grad_norm=grad_norm,
        converged=converged,
        iterations=iteration,
        trajectories=np.array(trajectories) if record else None,
        psi_history=np.array(psi_history) if record else None,
    )


def hausdorff_distance(a, b) -> float:
    """Symmetric Hausdorff distance between two point sets of shape (M, d)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) == 0 and len(b) == 0:
        return 0.0
    if len(a) == 0 or len(b) == 0:
        return float("inf")
    forward, _ = cKDTree(b).query(a)
    backward, _ = cKDTree(a).query(b)
    return float(max(np.max(forward), np.max(backward)))
