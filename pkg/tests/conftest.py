import numpy as np
import pytest

from geometry import BilliardShape
from spectral import StateExpansion, product_state, project_gaussian


@pytest.fixture
def interval():
    return BilliardShape.reference(1)


@pytest.fixture
def square():
    return BilliardShape.reference(2)


@pytest.fixture
def ground_state():
    return StateExpansion([1], [1.0])


@pytest.fixture
def two_mode_state():
    """Equal mix of the first two modes with a relative phase"""
    return StateExpansion.normalized([1, 2], [1.0, 1.0j])


@pytest.fixture
def real_two_mode_state():
    return StateExpansion.normalized([1, 2], [1.0, 0.6])


@pytest.fixture
def packet_state():
    """The projected packet with a = 1, p0 = 5 on modes 1, 5 and 10"""
    return project_gaussian(1.0, 5.0, [1, 5, 10])


@pytest.fixture
def square_state(two_mode_state, real_two_mode_state):
    return product_state(two_mode_state, real_two_mode_state)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
