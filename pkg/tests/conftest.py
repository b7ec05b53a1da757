import numpy as np
import pytest

from framekit import GFrame, GFusionFrame


@pytest.fixture
def coordinate_gframe():
    """Parseval frame on R^2 made of the two coordinate functionals."""
    return GFrame([np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])])


@pytest.fixture
def coordinate_gfusion():
    """Parseval weighted subspace frame: the two coordinate lines of R^2."""
    eye = np.eye(2)
    e1 = np.array([[1.0], [0.0]])
    e2 = np.array([[0.0], [1.0]])
    return GFusionFrame([(e1, eye, 1.0), (e2, eye, 1.0)])


@pytest.fixture
def diagonal_gfusion():
    """Single full-space component with block diag(1, 2)."""
    return GFusionFrame([(np.eye(2), np.diag([1.0, 2.0]), 1.0)])
