import numpy as np
import pytest


def _random_hermitian(rng, n, scale=3.0):
    m = rng.uniform(-scale, scale, (n, n)) + 1j * rng.uniform(-scale, scale, (n, n))
    h = 0.5 * (m + m.conj().T)
    np.fill_diagonal(h, np.diag(h).real)
    return h


@pytest.fixture
def random_hermitian():
    return _random_hermitian


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
