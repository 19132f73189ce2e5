"""Image files through Pillow: experiment photographs in, PGM grids and PPM overlays out."""

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from wave_assembly.core.errors import ValidationError
from wave_assembly.core.imaging import BinaryMask, GrayImage

MAXVAL_8BIT = 255
MAXVAL_16BIT = 65535

# Modes whose samples are 16-bit intensities once loaded
_WIDE_MODES = ("I", "I;16", "I;16B", "I;16L")


def read_image(path: str | Path) -> GrayImage:
    """Load a grayscale or color image as intensities in [0, 1].

    8- and 16-bit PGM, PNG and TIFF keep their depth; color images are
    converted to luminance first.

    Raises:
        ValidationError: The file is missing, unreadable or not an image
    """
    try:
        with Image.open(path) as img:
            img.load()
            mode = img.mode
            if mode in _WIDE_MODES:
                samples = np.asarray(img, dtype=float) / MAXVAL_16BIT
            elif mode != "F":
                samples = np.asarray(img.convert("L"), dtype=float) / MAXVAL_8BIT
    except FileNotFoundError as e:
        raise ValidationError(f"{path}: no such image") from e
    except UnidentifiedImageError as e:
        raise ValidationError(f"{path}: not a recognized image format") from e
    except (OSError, SyntaxError, ValueError) as e:
        raise ValidationError(f"{path}: cannot read image: {e}") from e
    if mode == "F":
        raise ValidationError(f"{path}: floating-point images are not supported")
    if samples.max(initial=0.0) > 1.0:
        raise ValidationError(f"{path}: pixel values exceed the {MAXVAL_16BIT} range")
    return GrayImage(samples)


def write_pgm(path: str | Path, samples: np.ndarray, maxval: int = MAXVAL_16BIT) -> None:
    """Write integer samples of shape (height, width) as a binary PGM of depth 8 or 16 bits."""
    samples = np.asarray(samples)
    if samples.ndim != 2:
        raise ValidationError(f"PGM samples must be 2-D, got shape {samples.shape}")
    if maxval == MAXVAL_8BIT:
        img = Image.fromarray(np.clip(samples, 0, maxval).astype(np.uint8))
    elif maxval == MAXVAL_16BIT:
        img = Image.fromarray(np.clip(samples, 0, maxval).astype(np.uint16))
    else:
        raise ValidationError(f"maxval must be {MAXVAL_8BIT} or {MAXVAL_16BIT}, got {maxval}")
    img.save(path, format="PPM")


def write_ppm(path: str | Path, rgb: np.ndarray) -> None:
    """Write an (height, width, 3) uint8 array as a binary PPM."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3:
        raise ValidationError(f"PPM data must have shape (height, width, 3), got {rgb.shape}")
    Image.fromarray(rgb.astype(np.uint8)).save(path, format="PPM")


def quantize(values: np.ndarray, low: float, high: float, maxval: int = MAXVAL_16BIT) -> np.ndarray:
    """Map [low, high] linearly onto [0, maxval]; values outside are clipped."""
    values = np.asarray(values, dtype=float)
    if high <= low:
        return np.zeros(values.shape, dtype=np.uint16)
    scaled = np.rint((values - low) / (high - low) * maxval)
    return np.clip(scaled, 0, maxval).astype(np.uint16)


def write_mask(path: str | Path, mask: BinaryMask) -> None:
    """Write a mask as an 8-bit PGM, foreground black on white."""
    write_pgm(path, np.where(mask.bits, 0, MAXVAL_8BIT), maxval=MAXVAL_8BIT)
