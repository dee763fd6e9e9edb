import numpy as np
import pytest

import quadrom as q


@pytest.fixture(scope="session")
def toy_system():
    return q.make_toy_system()


@pytest.fixture(scope="session")
def toy_grid():
    return q.log_grid(10.0 ** -0.5, 5.0, 40)


@pytest.fixture(scope="session")
def toy_dataset(toy_system, toy_grid):
    return q.sample_direct(toy_system, toy_grid)


@pytest.fixture(scope="session")
def scalar_system():
    """E=1, A=-1, Q=0.5, B=C=1: every value is hand-checkable."""
    return q.QuadraticSystem([[1.0]], [[-1.0]], [[0.5]], [1.0], [1.0],
                             symmetric=True)


def random_system(rng, n, symmetric=True, descriptor=False):
    """Stable random quadratic system of order n."""
    A = -np.diag(0.5 + rng.random(n)) + 0.3 * rng.standard_normal((n, n))
    B = rng.standard_normal(n)
    C = rng.standard_normal(n)
    Q = rng.standard_normal((n, n * n)) / n
    if symmetric:
        Q = q.symmetrize_quadratic(Q)
    E = np.eye(n) + (0.2 * rng.standard_normal((n, n)) if descriptor else 0.0)
    return q.QuadraticSystem(E, A, Q, B, C, symmetric=symmetric)
