import numpy as np
import pytest

from opbracket.core import JacobiParams, VerblunskyParams
from opbracket.periodic import PeriodicOprl, PeriodicOpuc


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def jacobi3():
    return JacobiParams([0.3, -0.7, 1.1], [0.8, 1.3])


@pytest.fixture
def jacobi5():
    return JacobiParams([0.5, -1.2, 0.1, 0.9, -0.4], [1.1, 0.6, 1.4, 0.9])


@pytest.fixture
def verblunsky4():
    return VerblunskyParams([0.3 + 0.2j, -0.4 + 0.1j, 0.1 - 0.5j], np.exp(0.7j))


@pytest.fixture
def periodic_oprl3():
    return PeriodicOprl([0.4, -0.9, 0.2], [1.1, 0.7, 1.3])


@pytest.fixture
def periodic_opuc4():
    return PeriodicOpuc([0.3 + 0.1j, -0.2 + 0.4j, 0.5 - 0.1j, -0.1 - 0.3j])
