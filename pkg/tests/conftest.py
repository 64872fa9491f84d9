import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from models.matrices import PmOneMatrix

settings.register_profile(
    "default",
    settings(
        suppress_health_check=[HealthCheck.too_slow],
        max_examples=50,
        deadline=None,
    ),
)
settings.load_profile("default")


def pm_matrix(rows):
    return PmOneMatrix(np.array(rows, dtype=np.int64))


@pytest.fixture
def h2():
    return pm_matrix([[1, 1], [1, -1]])


@pytest.fixture
def k_matrix():
    return pm_matrix([[1, -1], [-1, 1]])


@pytest.fixture
def regular4():
    return pm_matrix(np.ones((4, 4), dtype=np.int64) - 2 * np.eye(4, dtype=np.int64))
