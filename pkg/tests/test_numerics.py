import numpy as np
import pytest

from edtradeoff.errors import DimensionError
from edtradeoff.numerics import (as_square, householder_to, random_prob_dist, random_unitary,
                                 rng_from, unistochastic, unitarity_residual)


@pytest.mark.parametrize("d", [1, 2, 3, 6])
def test_random_unitary_is_unitary(d):
    U = random_unitary(d, 0)
    assert unitarity_residual(U) < 1e-13


def test_random_unitary_seeded():
    assert np.array_equal(random_unitary(4, 3), random_unitary(4, 3))
    assert not np.allclose(random_unitary(4, 3), random_unitary(4, 4))


def test_random_unitary_haar_first_moment():
    # E|U_00|^2 = 1/d under the Haar measure
    rng = np.random.default_rng(1)
    vals = [abs(random_unitary(3, rng)[0, 0]) ** 2 for _ in range(4000)]
    assert abs(np.mean(vals) - 1 / 3) < 0.02


def test_random_prob_dist():
    p = random_prob_dist(5, 2)
    assert p.shape == (5,) and np.all(p >= 0) and abs(p.sum() - 1) < 1e-15


def test_rng_from_passes_generator_through():
    g = np.random.default_rng(0)
    assert rng_from(g) is g


def test_unistochastic_is_doubly_stochastic():
    T = unistochastic(random_unitary(4, 5))
    assert np.allclose(T.sum(axis=0), 1) and np.allclose(T.sum(axis=1), 1)


@pytest.mark.parametrize("seed", range(5))
def test_householder_first_column(seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    v /= np.linalg.norm(v)
    H = householder_to(v)
    assert unitarity_residual(H) < 1e-14
    assert np.allclose(H[:, 0], v, atol=1e-14)


def test_householder_of_e1_is_identity():
    assert np.allclose(householder_to(np.array([1, 0, 0])), np.eye(3))


def test_as_square_rejects():
    with pytest.raises(DimensionError):
        as_square(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        as_square(np.array([[np.nan, 0], [0, 1]]))
