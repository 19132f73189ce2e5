"""Compare simulated assembly sites with binarized experiment images.

The pipeline registers physical minima onto an image with a projective
transform fitted to hand-picked correspondences, rasterizes them as disks,
and measures which share of the simulated pixels falls inside the clusters
found in the image, within circles of shrinking diameter.
"""

import itertools
import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from scipy import ndimage

from wave_assembly.output import MessageType, VerbosityLevel, message

from .errors import FitError, UnsupportedDimensionError, ValidationError
from .minima import MinimaSet

DEFAULT_ALPHAS = (0.5, 0.625, 0.75, 0.875, 1.0)
DEGENERACY_RTOL = 1e-12
COLLINEAR_RTOL = 1e-9
CONTRAST_FLOOR = 1e-12
# Transducer width in wavelengths; sets the default evaluation circle
TRANSDUCER_WIDTH = 40 / 3


class Polarity(StrEnum):
    """Which side of the threshold counts as foreground."""

    DARK = "dark"
    BRIGHT = "bright"


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major grayscale intensities in [0, 1], shape (height, width)."""

    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float)
        if samples.ndim != 2 or samples.size == 0:
            raise ValidationError(f"an image needs a non-empty 2-D sample array, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)) or samples.min() < 0 or samples.max() > 1:
            raise ValidationError("image samples must be finite and within [0, 1]")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    def inverted(self) -> "GrayImage":
        return GrayImage(1.0 - self.samples)


@dataclass(frozen=True, eq=False)
class BinaryMask:
    """Row-major boolean mask, shape (height, width)."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool)
        if bits.ndim != 2:
            raise ValidationError(f"a mask needs a 2-D array, got shape {bits.shape}")
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def empty(cls, width: int, height: int) -> "BinaryMask":
        return cls(np.zeros((height, width), dtype=bool))

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash((self.bits.shape, self.bits.tobytes()))


def binarize(img: GrayImage, sensitivity: float, polarity: Polarity = Polarity.DARK) -> BinaryMask:
    """Adaptive local-mean threshold.

    A pixel is foreground when its oriented intensity exceeds the mean of a
    square window around it times 1 + (0.5 - sensitivity). The window side is
    ceil(min(height, width) / 16) * 2 + 1. Dark polarity inverts intensities
    first. Pixels whose window has no contrast are background.
    """
    if not 0 <= sensitivity <= 1:
        raise ValidationError(f"sensitivity must lie in [0, 1], got {sensitivity}")
    oriented = 1.0 - img.samples if Polarity(polarity) is Polarity.DARK else img.samples

    window = math.ceil(min(img.height, img.width) / 16) * 2 + 1
    mean = ndimage.uniform_filter(oriented, size=window, mode="nearest")
    mean_square = ndimage.uniform_filter(oriented**2, size=window, mode="nearest")
    contrast = (mean_square - mean**2) > CONTRAST_FLOOR

    return BinaryMask((oriented > mean * (1 + (0.5 - sensitivity))) & contrast)


@dataclass(frozen=True, eq=False)
class Homography:
    """Projective map of the plane; H[2, 2] is scaled to 1 when nonzero."""

    H: np.ndarray

    def __post_init__(self):
        H = np.array(self.H, dtype=float)
        if H.shape != (3, 3) or not np.all(np.isfinite(H)):
            raise ValidationError(f"a homography is a finite 3x3 matrix, got shape {H.shape}")
        if abs(H[2, 2]) > DEGENERACY_RTOL * np.linalg.norm(H):
            H = H / H[2, 2]
        if abs(np.linalg.det(H)) <= DEGENERACY_RTOL * np.linalg.norm(H) ** 3:
            raise ValidationError("homography matrix is singular")
        H.setflags(write=False)
        object.__setattr__(self, "H", H)

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    @classmethod
    def translation(cls, tx: float, ty: float) -> "Homography":
        return cls(np.array([[1.0, 0.0, tx], [0.0, 1.0, ty], [0.0, 0.0, 1.0]]))

    def apply_homogeneous(self, points) -> tuple[np.ndarray, np.ndarray]:
        """Map (M, 2) points; return the dehomogenized points and the w column."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        mapped = np.column_stack([points, np.ones(len(points))]) @ self.H.T
        w = mapped[:, 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            return mapped[:, :2] / w[:, None], w

    def apply(self, points) -> np.ndarray:
        return self.apply_homogeneous(points)[0]

    def inverse(self) -> "Homography":
        return Homography(np.linalg.inv(self.H))

    def compose(self, other: "Homography") -> "Homography":
        """The map x -> self(other(x))."""
        return Homography(self.H @ other.H)


def _normalization(points: np.ndarray) -> np.ndarray:
    """Similarity moving the centroid to the origin with mean distance sqrt(2)."""
    centroid = points.mean(axis=0)
    spread = np.mean(np.linalg.norm(points - centroid, axis=1))
    if spread == 0:
        raise FitError("all correspondence points coincide")
    scale = np.sqrt(2) / spread
    return np.array(
        [
            [scale, 0.0, -scale * centroid[0]],
            [0.0, scale, -scale * centroid[1]],
            [0.0, 0.0, 1.0],
        ]
    )


def _check_collinear(source: np.ndarray) -> None:
    span = float(np.max(np.ptp(source, axis=0)))
    for i, j, m in itertools.combinations(range(len(source)), 3):
        a, b, c = source[i], source[j], source[m]
        area = 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if area <= COLLINEAR_RTOL * span**2:
            raise FitError(f"source points {i}, {j} and {m} are collinear")


def fit_homography(source, target) -> Homography:
    """Normalized direct linear transform from (M, 2) source to target points.

    Both point sets are normalized before the homogeneous system is solved
    by SVD, then the normalization is undone. Four pairs give an exact fit;
    more pairs give the algebraic least-squares solution.

    Raises:
        FitError: Fewer than 4 pairs or a degenerate configuration
    """
    source = np.asarray(source, dtype=float)
    target = np.asarray(target, dtype=float)
    if source.ndim != 2 or source.shape[1] != 2 or source.shape != target.shape:
        raise FitError(f"expected matching (M, 2) point arrays, got {source.shape} and {target.shape}")
    if len(source) < 4:
        raise FitError(f"a homography needs at least 4 correspondences, got {len(source)}")
    if not (np.all(np.isfinite(source)) and np.all(np.isfinite(target))):
        raise FitError("correspondence points must be finite")
    if len(source) == 4:
        _check_collinear(source)

    T_source = _normalization(source)
    T_target = _normalization(target)
    ones = np.ones((len(source), 1))
    src = (np.hstack([source, ones]) @ T_source.T)[:, :2]
    dst = (np.hstack([target, ones]) @ T_target.T)[:, :2]

    rows = []
    for (x, y), (u, v) in zip(src, dst, strict=True):
        rows.append([-x, -y, -1.0, 0.0, 0.0, 0.0, u * x, u * y, u])
        rows.append([0.0, 0.0, 0.0, -x, -y, -1.0, v * x, v * y, v])
    _, singular, vt = np.linalg.svd(np.array(rows))
    if singular[7] <= DEGENERACY_RTOL * singular[0]:
        raise FitError(
            f"correspondences do not determine a unique homography (sigma8/sigma1 = {singular[7] / singular[0]:.3e})"
        )

    H = np.linalg.inv(T_target) @ vt[-1].reshape(3, 3) @ T_source
    try:
        return Homography(H)
    except ValidationError as e:
        raise FitError(f"fitted homography is degenerate: {e}") from e


def reprojection_errors(H: Homography, source, target) -> np.ndarray:
    """Euclidean distance between H(source) and target for every pair."""
    return np.linalg.norm(H.apply(source) - np.asarray(target, dtype=float), axis=1)


def projected_pixels(H: Homography, points) -> tuple[np.ndarray, int]:
    """Map physical points to pixel coordinates, dropping those sent to infinity.

    Returns the (M', 2) pixel coordinates (column, row) and the number of
    points skipped because w was numerically zero.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return np.empty((0, 2)), 0
    pixels, w = H.apply_homogeneous(points)
    homogeneous = np.column_stack([points, np.ones(len(points))])
    reference = np.linalg.norm(H.H[2]) * np.linalg.norm(homogeneous, axis=1)
    finite = np.abs(w) > DEGENERACY_RTOL * reference
    return pixels[finite], int((~finite).sum())


def rasterize_disks(centers, width: int, height: int, radius: float) -> BinaryMask:
    """Filled disks; pixel (col i, row j) is covered when its center (i, j) lies within ``radius``."""
    bits = np.zeros((height, width), dtype=bool)
    for cx, cy in np.asarray(centers, dtype=float).reshape(-1, 2):
        left, right = max(math.ceil(cx - radius), 0), min(math.floor(cx + radius), width - 1)
        top, bottom = max(math.ceil(cy - radius), 0), min(math.floor(cy + radius), height - 1)
        if left > right or top > bottom:
            continue
        cols = np.arange(left, right + 1)
        rows = np.arange(top, bottom + 1)
        inside = (cols[None, :] - cx) ** 2 + (rows[:, None] - cy) ** 2 <= radius**2
        bits[top : bottom + 1, left : right + 1] |= inside
    return BinaryMask(bits)


def project_minima(H: Homography, minima: MinimaSet, width: int, height: int, radius: float) -> BinaryMask:
    """Draw every minimum, mapped through H, as a disk on a width x height canvas."""
    if radius < 1:
        raise ValidationError(f"marker radius must be at least 1 pixel, got {radius}")
    if width < 1 or height < 1:
        raise ValidationError(f"canvas must be non-empty, got {width}x{height}")
    points = minima.points()
    if points.shape[1] != 2:
        raise UnsupportedDimensionError(f"projection onto an image needs 2-D minima, got {points.shape[1]}-D")
    pixels, skipped = projected_pixels(H, points)
    if skipped:
        message(f"{skipped} minima map to infinity and were skipped", MessageType.WARNING, VerbosityLevel.ALWAYS)
    return rasterize_disks(pixels, width, height, radius)


def circle_mask(width: int, height: int, center, diameter: float) -> np.ndarray:
    cx, cy = center
    cols = np.arange(width)[None, :]
    rows = np.arange(height)[:, None]
    return (cols - cx) ** 2 + (rows - cy) ** 2 <= (diameter / 2) ** 2


def _check_same_shape(sim: BinaryMask, exp: BinaryMask) -> None:
    if sim.bits.shape != exp.bits.shape:
        raise ValidationError(f"mask sizes differ: {sim.width}x{sim.height} vs {exp.width}x{exp.height}")


def overlap_fraction(sim: BinaryMask, exp: BinaryMask, center, diameter: float) -> float | None:
    """Percentage of simulated pixels inside the circle that are also experiment pixels.

    Returns None when the circle holds no simulated pixel.
    """
    _check_same_shape(sim, exp)
    if not (np.isfinite(diameter) and diameter > 0):
        raise ValidationError(f"circle diameter must be positive, got {diameter}")
    circle = circle_mask(sim.width, sim.height, center, diameter)
    if not circle.any():
        raise ValidationError(f"circle at {tuple(center)} with diameter {diameter} misses the canvas")

    simulated = sim.bits & circle
    total = int(simulated.sum())
    if total == 0:
        return None
    return 100.0 * int((simulated & exp.bits).sum()) / total


@dataclass(frozen=True)
class AgreementPoint:
    """Overlap inside the circle of diameter alpha * D; agreement is None when undefined."""

    alpha: float
    diameter_px: float
    agreement: float | None

    def __post_init__(self):
        if self.agreement is not None and not 0 <= self.agreement <= 100:
            raise ValidationError(f"agreement must lie in [0, 100], got {self.agreement}")


def agreement_curve(
    sim: BinaryMask,
    exp: BinaryMask,
    center,
    diameter_px: float,
    alphas=DEFAULT_ALPHAS,
) -> list[AgreementPoint]:
    """Overlap fraction for every circle diameter alpha * diameter_px."""
    points = []
    for alpha in alphas:
        if not 0.5 <= alpha <= 1:
            raise ValidationError(f"alpha must lie in [0.5, 1], got {alpha}")
        diameter = alpha * diameter_px
        points.append(AgreementPoint(alpha, diameter, overlap_fraction(sim, exp, center, diameter)))
    return points


def evaluation_circle(H: Homography, wavelength: float, width: float = TRANSDUCER_WIDTH) -> tuple[np.ndarray, float]:
    """Default circle for ``agreement_curve``: the image of the origin and the projected width.

    The diameter is the pixel distance between the images of (-D/2, 0) and
    (D/2, 0) with D = ``width`` wavelengths.
    """
    half = 0.5 * width * wavelength
    pixels, skipped = projected_pixels(H, [(0.0, 0.0), (-half, 0.0), (half, 0.0)])
    if skipped:
        raise ValidationError("the homography sends the evaluation circle to infinity")
    center, left, right = pixels
    return center, float(np.linalg.norm(right - left))


def compose_overlay(sim: BinaryMask, exp: BinaryMask) -> np.ndarray:
    """RGB overlay (height, width, 3) of uint8.

    White background, simulated-only pixels red, experiment-only pixels blue
    and pixels in both black.
    """
    _check_same_shape(sim, exp)
    rgb = np.full((sim.height, sim.width, 3), 255, dtype=np.uint8)
    rgb[sim.bits & ~exp.bits] = (255, 0, 0)
    rgb[exp.bits & ~sim.bits] = (0, 0, 255)
    rgb[sim.bits & exp.bits] = (0, 0, 0)
    return rgb
