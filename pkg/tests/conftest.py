import numpy as np
import pytest

from hopftwistor import StiefelPoint


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)


@pytest.fixture
def canonical_pair():
    """The standard Stiefel point (e0, e1) in dimension n = 2."""
    um = np.array([1.0, 0.0, 0.0], dtype=complex)
    up = np.array([0.0, 1.0, 0.0], dtype=complex)
    return StiefelPoint(um, up)
