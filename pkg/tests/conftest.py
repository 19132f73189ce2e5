"""Shared fixtures for the wave-assembly test suite."""

import numpy as np
import pytest

from tests.helpers import FREQUENCY, PRINTED_A, PRINTED_B
from wave_assembly.core import ArpCoefficients, MaterialParams, arp_coefficients
from wave_assembly.output import get_output


@pytest.fixture(autouse=True)
def quiet_output():
    """Reset the global output manager between tests."""
    manager = get_output()
    verbosity, use_color = manager.verbosity, manager.use_color
    manager.verbosity = 0
    manager.use_color = False
    yield manager
    manager.verbosity = verbosity
    manager.use_color = use_color


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def material():
    return MaterialParams.water_carbon(FREQUENCY)


@pytest.fixture
def coefficients(material):
    """SI water/carbon coefficients in 2-D."""
    return arp_coefficients(material, 2)


@pytest.fixture
def printed_coefficients():
    return ArpCoefficients.direct(PRINTED_A, PRINTED_B, 2)
