"""Numerical upper envelope for the exact minimum of error + disturbance.

:func:`s2_min_numeric` searches over actual measurement bases. The search is
a fixed, seeded stream of candidate evaluations (quasi-random or Haar
batches interleaved with local polishing) and ``budget`` truncates that
stream, so the result is deterministic and can only improve as the budget
grows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize
from scipy.stats import qmc

from . import _kernels
from .bound import tradeoff_bound
from .errors import PreconditionError
from .majorization import majorizes
from .numerics import random_unitary, rng_from
from .quantum import (Basis, ProbDist, Scenario, born_distribution,
                      qubit_state, sigma_x_basis, sigma_z_basis)

log = logging.getLogger(__name__)

MAX_DIM = 6
QUBIT_BATCH = 4096
HAAR_BATCH = 2048
POLISH_EVALS = 400


@dataclass(frozen=True, eq=False)
class OracleResult:
    min_value: float
    argmin_params: np.ndarray
    evaluations: int
    refined: bool

    def basis(self, s: Scenario) -> Basis:
        """Rebuild the best basis found. Qubit vectors follow A's labels; larger
        dimensions keep the search order, which the objective aligns by sorting."""
        if s.dim == 2:
            a, b = self.argmin_params
            A = s.basis_a.matrix
            c, sn = np.cos(a / 2), np.sin(a / 2)
            v1 = c * A[:, 0] + np.exp(1j * b) * sn * A[:, 1]
            v2 = -np.exp(-1j * b) * sn * A[:, 0] + c * A[:, 1]
            return Basis.from_vectors([v1, v2])
        d = s.dim
        x = self.argmin_params
        return Basis((x[:d * d] + 1j * x[d * d:]).reshape(d, d))


@dataclass(frozen=True)
class SweepRow:
    theta: float
    p1: float
    q1: float
    verdict: str
    blue: float
    red: float


class _Exhausted(Exception):
    pass


class _Budget:
    """Counts evaluations and tracks the best one; raises when the budget is spent."""

    def __init__(self, budget):
        self.left = budget
        self.used = 0
        self.best = np.inf
        self.best_x = None
        self.refined = False

    def batch(self, f, X):
        n = min(len(X), self.left)
        if n <= 0:
            raise _Exhausted
        X = X[:n]
        vals = f(X)
        self.left -= n
        self.used += n
        k = int(np.argmin(vals))
        if vals[k] < self.best:
            self.best = float(vals[k])
            self.best_x = np.array(X[k], dtype=float)
        if self.left <= 0:
            raise _Exhausted
        return vals

    def scalar(self, f, x, polishing=True):
        if self.left <= 0:
            raise _Exhausted
        v = float(f(np.asarray(x)))
        self.left -= 1
        self.used += 1
        if v < self.best:
            self.best = v
            self.best_x = np.array(x, dtype=float)
            self.refined = self.refined or polishing
        return v


def _sorted_pq(s: Scenario):
    return np.sort(s.P.values)[::-1], np.sort(s.Q.values)[::-1]


def _qubit_search(s, tally, rng):
    p, q = _sorted_pq(s)
    rho = s.state.density
    A, B = s.basis_a.matrix, s.basis_b.matrix

    def f_batch(X):
        X = np.atleast_2d(X)
        return _kernels.qubit_err_dis(rho, A, B, X[:, 0], X[:, 1], p, q)

    def f_one(x):
        return f_batch(np.asarray(x)[None, :])[0]

    halton = qmc.Halton(d=2, scramble=True, seed=rng)
    scale = np.array([np.pi, 2 * np.pi])
    last = None
    while True:
        X = halton.random(QUBIT_BATCH) * scale
        vals = tally.batch(f_batch, X)
        # polish the incumbent once; afterwards explore from the batch winner
        if last is None or not np.array_equal(last, tally.best_x):
            x0 = tally.best_x
        else:
            x0 = X[int(np.argmin(vals))]
        last = np.array(tally.best_x)
        _polish(lambda x: tally.scalar(f_one, x), x0)


def _polish(fun, x0):
    minimize(fun, x0, method="Nelder-Mead",
             options={"maxfev": POLISH_EVALS, "xatol": 1e-12, "fatol": 0.0,
                      "adaptive": len(x0) > 2})


def _candidate_stats(s, Ms):
    """``(P', Q~)`` for a stack of candidate bases ``Ms[k]`` (columns = vectors)."""
    B = s.basis_b.matrix
    if s.state.is_pure:
        Pp = np.abs(np.einsum("kji,j->ki", Ms.conj(), s.state.data)) ** 2
    else:
        Pp = np.einsum("kji,jl,kli->ki", Ms.conj(), s.state.data, Ms).real
    T = np.abs(np.einsum("kji,jl->kil", Ms.conj(), B)) ** 2
    Qt = np.einsum("ki,kil->kl", Pp, T)
    return Pp, Qt


def _hermitian(h, d):
    H = np.zeros((d, d), dtype=complex)
    iu = np.triu_indices(d, 1)
    n_off = len(iu[0])
    H[iu] = h[:n_off] + 1j * h[n_off:2 * n_off]
    H = H + H.conj().T
    H[np.diag_indices(d)] = h[2 * n_off:]
    return H


def _general_search(s, tally, rng):
    d = s.dim
    p, q = _sorted_pq(s)

    def pack(Ms):
        return np.concatenate([Ms.real.reshape(len(Ms), -1), Ms.imag.reshape(len(Ms), -1)], axis=1)

    def unpack(X):
        X = np.atleast_2d(X)
        return (X[:, :d * d] + 1j * X[:, d * d:]).reshape(-1, d, d)

    def f_batch(X):
        Pp, Qt = _candidate_stats(s, unpack(X))
        return _kernels.sorted_err_dis(p, q, Pp, Qt)

    def f_one(x):
        return f_batch(x)[0]

    last = None
    while True:
        Ms = np.stack([random_unitary(d, rng) for _ in range(HAAR_BATCH)])
        vals = tally.batch(f_batch, pack(Ms))
        if last is None or not np.array_equal(last, tally.best_x):
            M0 = unpack(tally.best_x)[0]
        else:
            M0 = Ms[int(np.argmin(vals))]
        last = np.array(tally.best_x)

        def local(h, M0=M0):
            M = M0 @ expm(1j * _hermitian(h, d))
            return tally.scalar(f_one, pack(M[None])[0])

        minimize(local, np.zeros(d * d), method="BFGS",
                 options={"maxiter": POLISH_EVALS // (d * d + 1) + 1, "gtol": 1e-12})


def s2_min_numeric(s: Scenario, budget: int, seed=None) -> OracleResult:
    """Best ``Err + Dis`` over measurement bases within ``budget`` evaluations.

    Outcome labels of each candidate are aligned to ``P`` and ``Q`` in
    descending order, which is optimal per candidate. Qubits are searched
    in the angles ``(alpha, beta)`` of ``cos(alpha/2)|a_1> + e^{i beta}
    sin(alpha/2)|a_2>``; larger dimensions use Haar batches plus BFGS on
    a unitary's Hermitian generator.
    """
    if budget < 1:
        raise PreconditionError("budget must be >= 1")
    if s.dim > MAX_DIM:
        raise PreconditionError(f"oracle supports d <= {MAX_DIM}")
    rng = rng_from(seed)
    tally = _Budget(int(budget))
    try:
        if s.dim == 2:
            _qubit_search(s, tally, rng)
        else:
            _general_search(s, tally, rng)
    except _Exhausted:
        pass
    return OracleResult(tally.best, tally.best_x, tally.used, tally.refined)


def verdict(P, Q) -> str:
    """``"P>Q"``, ``"Q>P"`` or ``"incomparable"``; equal spectra count as ``"P>Q"``."""
    if majorizes(P, Q):
        return "P>Q"
    if majorizes(Q, P):
        return "Q>P"
    return "incomparable"


def qubit_scenario(theta: float) -> Scenario:
    """A = sigma_z, B = sigma_x on ``cos(theta/2)|0> + sin(theta/2)|1>``."""
    return Scenario(qubit_state(theta), sigma_z_basis(), sigma_x_basis())


def sweep_qubit(theta_start: float, theta_end: float, steps: int, budget: int, seed) -> list:
    if steps < 2:
        raise PreconditionError("steps must be >= 2")
    seeds = np.random.SeedSequence(seed).spawn(steps)
    rows = []
    for theta, ss in zip(np.linspace(theta_start, theta_end, steps), seeds):
        s = qubit_scenario(theta)
        P, Q = s.P, s.Q
        blue = tradeoff_bound(P, Q).bound
        red = s2_min_numeric(s, budget, np.random.default_rng(ss)).min_value
        rows.append(SweepRow(float(theta), float(P[0]), float(Q[0]), verdict(P, Q),
                             float(blue), float(red)))
    return rows


def sample_sequential(s: Scenario, meas: Basis, shots: int, seed=None):
    """Simulate ``shots`` runs of measuring ``meas`` then B; return empirical ``(P', Q~)``."""
    if shots < 1:
        raise PreconditionError("shots must be >= 1")
    rng = rng_from(seed)
    Pp = born_distribution(s.state, meas).values
    T = np.abs(meas.matrix.conj().T @ s.basis_b.matrix) ** 2
    T = T / T.sum(axis=1, keepdims=True)
    counts = rng.multinomial(shots, Pp)
    qcounts = np.zeros(s.dim, dtype=np.int64)
    for i, n in enumerate(counts):
        if n:
            qcounts += rng.multinomial(n, T[i])
    return ProbDist(counts / shots), ProbDist(qcounts / shots)
