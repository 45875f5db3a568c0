import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def max_abs(a):
    return float(np.max(np.abs(a)))
