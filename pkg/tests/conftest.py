import numpy as np
import pytest

from qtradeoff import measurement


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_hermitian(dim, seed):
    g = np.random.default_rng(seed)
    m = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    return 0.5 * (m + m.conj().T)


def random_triple(dim, seed):
    """Seeded (A, A', B) triple of Haar-random bases."""
    return (measurement.haar_random_basis(dim, seed, 0),
            measurement.haar_random_basis(dim, seed, 1),
            measurement.haar_random_basis(dim, seed, 2))
