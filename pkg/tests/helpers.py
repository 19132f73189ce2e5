"""Constants and builders shared by the tests."""

import numpy as np

from wave_assembly.core import WaveConfig

FREQUENCY = 1.0e6
SOUND_SPEED = 1500.0
WAVENUMBER = 2 * np.pi * FREQUENCY / SOUND_SPEED
WAVELENGTH = 2 * np.pi / WAVENUMBER

# Coefficients as printed for the water/carbon system
PRINTED_A = 5.7424e6
PRINTED_B = 0.2115


def random_config(rng: np.random.Generator, dimension: int, count: int, wavenumber: float = WAVENUMBER) -> WaveConfig:
    """Random directions with random complex amplitudes."""
    directions = rng.normal(size=(dimension, count))
    alphas = rng.normal(size=count) + 1j * rng.normal(size=count)
    betas = rng.normal(size=count) + 1j * rng.normal(size=count)
    return WaveConfig.from_directions(directions, wavenumber, alphas, betas)


def pair_config(wavenumber: float = WAVENUMBER) -> WaveConfig:
    """Single counter-propagating pair along x, p = 2 cos(kx)."""
    return WaveConfig(wavenumber, [[wavenumber], [0.0]], [1.0], [1.0])


def parse_cli(*argv: str):
    """Namespace for a command line, parsed by the real parser."""
    from wave_assembly.wave_assembly import build_parser

    return build_parser().parse_args(list(argv))


def write_config(path, text: str):
    path.write_text(text, encoding="utf-8")
    return str(path)
