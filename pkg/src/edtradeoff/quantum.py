"""States, measurement bases, Born-rule statistics and the post-measurement ensemble.

Observables enter only through their eigenbases. A :class:`Basis` stores its
vectors as the *columns* of a unitary matrix, so ``basis.matrix[:, i]`` is
``|v_i>`` and outcome ``i`` is the label of that column (0-based).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (DimensionError, PreconditionError, UnsupportedInputError,
                     ValidationError)
from .numerics import householder_to, random_prob_dist, random_unitary, rng_from

STATE_ATOL = 1e-12
GRAM_ATOL = 1e-10
NEG_CLAMP = 1e-15


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Probability vector with outcome labels.

    Entries in ``[-1e-15, 0)`` are treated as roundoff and clamped to zero;
    anything more negative is rejected.
    """

    values: np.ndarray
    labels: tuple = field(default=None)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size == 0:
            raise DimensionError("empty distribution")
        if not np.all(np.isfinite(v)):
            raise ValidationError("distribution has non-finite entries")
        if np.any(v < -NEG_CLAMP):
            raise ValidationError(f"negative probability {v.min():.3e}")
        v = np.where(v < 0, 0.0, v)
        s = v.sum()
        if abs(s - 1.0) > 1e-9:
            raise ValidationError(f"probabilities sum to {s!r}, not 1")
        object.__setattr__(self, "values", _frozen(v / s))
        labels = tuple(range(v.size)) if self.labels is None else tuple(self.labels)
        if len(labels) != v.size:
            raise DimensionError("labels and values differ in length")
        object.__setattr__(self, "labels", labels)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values.tolist())

    def __repr__(self):
        return f"ProbDist({np.array2string(self.values, precision=6)})"


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Pure state vector or density matrix.

    Build through :meth:`pure` / :meth:`mixed`, which validate the input.
    """

    kind: str
    data: np.ndarray

    @classmethod
    def pure(cls, amplitudes) -> "QuantumState":
        v = np.asarray(amplitudes, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if abs(n - 1.0) > STATE_ATOL:
            raise ValidationError(f"state norm is {n!r}, expected 1")
        return cls("pure", _frozen(v))

    @classmethod
    def mixed(cls, matrix) -> "QuantumState":
        rho = np.asarray(matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionError(f"density matrix must be square, got {rho.shape}")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > STATE_ATOL:
            raise ValidationError(f"density matrix not Hermitian (residual {herm:.3e})")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > STATE_ATOL:
            raise ValidationError(f"density matrix trace is {tr!r}")
        ev = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        if ev.min() < -STATE_ATOL:
            raise ValidationError(f"density matrix has eigenvalue {ev.min():.3e}")
        return cls("mixed", _frozen(rho))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def is_pure(self) -> bool:
        return self.kind == "pure"

    @property
    def density(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)

    def bloch_vector(self) -> np.ndarray:
        """Real 3-vector ``r`` with ``rho = (I + r.sigma)/2``; qubits only."""
        if self.dim != 2:
            raise UnsupportedInputError("Bloch vector only defined for qubits")
        rho = self.density
        return np.array([2 * rho[0, 1].real, -2 * rho[0, 1].imag,
                         (rho[0, 0] - rho[1, 1]).real])


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal basis; column ``i`` of ``matrix`` is the vector labeled ``i``."""

    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise DimensionError(f"basis must be d x d, got {M.shape}")
        res = gram_residual(M)
        if res > GRAM_ATOL:
            raise ValidationError(f"basis not orthonormal (Gram residual {res:.3e})")
        object.__setattr__(self, "matrix", _frozen(M))

    @classmethod
    def from_vectors(cls, vectors) -> "Basis":
        return cls(np.column_stack([np.asarray(v, dtype=complex) for v in vectors]))

    @classmethod
    def computational(cls, d: int) -> "Basis":
        return cls(np.eye(d, dtype=complex))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def vectors(self) -> list:
        return [self.matrix[:, i] for i in range(self.dim)]


def gram_residual(M) -> float:
    M = np.asarray(M, dtype=complex)
    return float(np.max(np.abs(M.conj().T @ M - np.eye(M.shape[1]))))


@dataclass(frozen=True, eq=False)
class Scenario:
    """A state plus the eigenbases of the two observables ``A`` and ``B``."""

    state: QuantumState
    basis_a: Basis
    basis_b: Basis

    def __post_init__(self):
        d = self.state.dim
        if self.basis_a.dim != d or self.basis_b.dim != d:
            raise DimensionError("state and bases must share one dimension")
        if d < 2:
            raise DimensionError("scenarios need d >= 2")

    @property
    def dim(self) -> int:
        return self.state.dim

    @property
    def P(self) -> ProbDist:
        return born_distribution(self.state, self.basis_a)

    @property
    def Q(self) -> ProbDist:
        return born_distribution(self.state, self.basis_b)

    def with_state(self, state: QuantumState) -> "Scenario":
        return Scenario(state, self.basis_a, self.basis_b)


def _check_dims(state, *bases):
    for b in bases:
        if b.dim != state.dim:
            raise DimensionError(f"state has d={state.dim}, basis has d={b.dim}")


def _born_raw(state: QuantumState, V: np.ndarray) -> np.ndarray:
    if state.is_pure:
        return np.abs(V.conj().T @ state.data) ** 2
    return np.einsum("ji,jk,ki->i", V.conj(), state.data, V).real


def born_distribution(state: QuantumState, basis: Basis) -> ProbDist:
    """Outcome distribution of an ideal measurement of ``basis`` on ``state``."""
    _check_dims(state, basis)
    return ProbDist(_born_raw(state, basis.matrix))


def post_measurement_state(state: QuantumState, meas: Basis) -> QuantumState:
    """Non-selective post-measurement ensemble ``sum_i p'_i |a'_i><a'_i|``."""
    _check_dims(state, meas)
    p = born_distribution(state, meas).values
    V = meas.matrix
    rho = (V * p) @ V.conj().T
    return QuantumState("mixed", _frozen(0.5 * (rho + rho.conj().T)))


def disturbed_distribution(state: QuantumState, meas: Basis, basis_b: Basis) -> ProbDist:
    """Distribution of ``B`` on the ensemble left behind by measuring ``meas``."""
    _check_dims(state, meas, basis_b)
    p = born_distribution(state, meas).values
    T = np.abs(meas.matrix.conj().T @ basis_b.matrix) ** 2
    return ProbDist(p @ T)


def phase_align(state: QuantumState, basis_b: Basis) -> Basis:
    """Rephase each ``|b_j>`` so that ``<b_j|psi> = sqrt(q_j) >= 0``.

    Vectors orthogonal to the state are left untouched.
    """
    if not state.is_pure:
        raise UnsupportedInputError("phase alignment needs a pure state")
    _check_dims(state, basis_b)
    B = np.array(basis_b.matrix)
    c = B.conj().T @ state.data
    mag = np.abs(c)
    ph = np.where(mag > 0, c / np.where(mag > 0, mag, 1.0), 1.0)
    return Basis(B * ph)


# --- constructors used by the CLI, the oracle and the tests -----------------

def qubit_state(theta: float) -> QuantumState:
    """``cos(theta/2)|0> + sin(theta/2)|1>``."""
    return QuantumState.pure([np.cos(theta / 2), np.sin(theta / 2)])


def sigma_z_basis() -> Basis:
    return Basis.computational(2)


def sigma_x_basis() -> Basis:
    s = 1 / np.sqrt(2)
    return Basis(np.array([[s, s], [s, -s]], dtype=complex))


def depolarize(state: QuantumState, eta: float) -> QuantumState:
    """``eta/d I + (1 - eta) rho``."""
    if not 0.0 <= eta <= 1.0:
        raise PreconditionError(f"eta must lie in [0, 1], got {eta}")
    d = state.dim
    rho = eta / d * np.eye(d) + (1 - eta) * state.density
    return QuantumState.mixed(0.5 * (rho + rho.conj().T))


def random_pure_state(d: int, seed=None) -> QuantumState:
    rng = rng_from(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return QuantumState.pure(v / np.linalg.norm(v))


def random_mixed_state(d: int, seed=None) -> QuantumState:
    """Random full-rank density matrix (Haar eigenbasis, flat-simplex spectrum)."""
    rng = rng_from(seed)
    U = random_unitary(d, rng)
    lam = random_prob_dist(d, rng)
    rho = (U * lam) @ U.conj().T
    return QuantumState.mixed(0.5 * (rho + rho.conj().T))


def random_basis(d: int, seed=None) -> Basis:
    return Basis(random_unitary(d, seed))


def random_scenario(d: int, seed=None, mixed: bool = False) -> Scenario:
    rng = rng_from(seed)
    state = random_mixed_state(d, rng) if mixed else random_pure_state(d, rng)
    return Scenario(state, random_basis(d, rng), random_basis(d, rng))


def scenario_with_distributions(P, Q, seed=None) -> Scenario:
    """Pure-state scenario whose ideal A and B statistics are exactly ``P`` and ``Q``.

    The state and the B basis are random; the A basis is the image of a
    random unitary frame chosen so that its overlaps with the state have
    squared moduli ``P``.
    """
    rng = rng_from(seed)
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    d = P.size
    if Q.size != d:
        raise DimensionError("P and Q must have equal length")
    B = random_unitary(d, rng)
    ph = np.exp(2j * np.pi * rng.random(d))
    psi = B @ (np.sqrt(Q) * ph)
    psi = psi / np.linalg.norm(psi)
    # W maps e_1 -> psi; in that frame A needs first-row moduli sqrt(P)
    W = householder_to(psi)
    rest = random_unitary(d - 1, rng) if d > 1 else np.eye(0)
    frame = np.eye(d, dtype=complex)
    frame[1:, 1:] = rest
    H = householder_to(np.sqrt(P) * np.exp(2j * np.pi * rng.random(d)))
    # columns of H^T have first entries sqrt(P_i) e^{i phase}
    A = W @ frame @ H.T
    return Scenario(QuantumState.pure(psi), Basis(A), Basis(B))
