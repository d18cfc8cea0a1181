"""Dense complex linear algebra helpers, seeded sampling and residuals."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError

#: Default absolute tolerance for residual comparisons.
ATOL = 1e-12


def rng_from(seed) -> np.random.Generator:
    """Return a generator for ``seed``; an existing Generator is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def as_square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DimensionError("matrix has non-finite entries")
    return M


def unitarity_residual(M) -> float:
    """Max-norm of ``M^dagger M - I``; zero exactly when ``M`` is unitary."""
    M = as_square(M)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[0])), initial=0.0))


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random ``d x d`` unitary.

    QR of a complex Ginibre matrix, with the phases of R's diagonal pushed
    into Q so the result is Haar rather than QR-biased.
    """
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    rng = rng_from(seed)
    Z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    ph = np.diagonal(R) / np.abs(np.diagonal(R))
    return Q * ph


def random_prob_dist(d: int, seed=None) -> np.ndarray:
    """Sample uniformly from the probability simplex of dimension ``d``."""
    if d < 1:
        raise DimensionError("dimension must be >= 1")
    rng = rng_from(seed)
    x = rng.exponential(size=d)
    return x / x.sum()


def unistochastic(U) -> np.ndarray:
    """Entrywise ``|U_ij|^2``."""
    return np.abs(np.asarray(U)) ** 2


def householder_to(v) -> np.ndarray:
    """Unitary whose first column is the unit vector ``v``."""
    v = np.asarray(v, dtype=complex)
    d = v.shape[0]
    # absorb the phase of v[0] so the reflection target is real
    ph = v[0] / abs(v[0]) if abs(v[0]) > 0 else 1.0
    w = v / ph
    e1 = np.zeros(d, dtype=complex)
    e1[0] = 1.0
    u = e1 - w
    nu = np.linalg.norm(u)
    if nu < 1e-15:
        H = np.eye(d, dtype=complex)
    else:
        u = u / nu
        H = np.eye(d, dtype=complex) - 2.0 * np.outer(u, u.conj())
    H[:, 0] *= ph
    return H
