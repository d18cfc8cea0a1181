"""Zero-error, zero-disturbance measurement synthesis.

Given sorted ``P`` (ideal A statistics) and ``Q`` (ideal B statistics) with
``P`` majorizing ``Q``, build a unitary ``U`` with

* ``sum_i p_i |U_ij|^2 = q_j``  (B statistics survive the measurement), and
* ``sum_j U_ij sqrt(q_j) = sqrt(p_i)``  (A statistics are reproduced),

by peeling off one 2x2 rotation per level: pick the pivot ``j`` with
``p_{j-1} >= q_1 >= p_j``, rotate positions ``(1, j)`` so that the first
entry becomes ``q_1``, and recurse on the remaining ``d - 1`` positions.
Each 2x2 rotation has two phase branches, so a sign string of length
``d - 1`` selects one of ``2^(d-1)`` solutions.
"""

from __future__ import annotations

import cmath
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from .divergence import relative_entropy
from .errors import (DimensionError, NoZEZDError, PreconditionError,
                     UnsupportedInputError)
from .majorization import SLACK, TOTAL_ATOL, majorizes, sort_desc
from .numerics import unitarity_residual
from .quantum import (Basis, QuantumState, Scenario, born_distribution,
                      depolarize, disturbed_distribution, phase_align)

log = logging.getLogger(__name__)

BLOCK_ATOL = 1e-12

#: How many 2x2 blocks were resolved by the printed closed form vs. the
#: exact triangle construction; diagnostics only.
block_stats = {"closed_form": 0, "triangle": 0, "trivial": 0}


@dataclass(frozen=True, eq=False)
class SynthesisSolution:
    U: np.ndarray
    signs: str
    residual1: float
    residual2: float

    @property
    def unitarity(self) -> float:
        return unitarity_residual(self.U)


def parse_signs(signs, d: int) -> list:
    """Normalize a branch selector to a list of ``+1/-1`` of length ``d - 1``.

    A string is read as bits (``"010"``): bit ``0`` is the first branch and
    bit ``1`` the mirrored one. Any other sequence must hold ``+1``/``-1``.
    ``None`` selects the first branch everywhere.
    """
    if signs is None:
        return [1] * (d - 1)
    if isinstance(signs, str):
        if set(signs) - {"0", "1"}:
            raise PreconditionError(f"sign string must be binary, got {signs!r}")
        out = [1 if ch == "0" else -1 for ch in signs]
    else:
        out = [int(s) for s in signs]
        if set(out) - {1, -1}:
            raise PreconditionError(f"sign sequence must hold +1/-1, got {signs!r}")
    if len(out) != d - 1:
        raise PreconditionError(f"need {d - 1} branch bits for d={d}, got {len(out)}")
    return out


def signs_to_str(signs) -> str:
    return "".join("0" if s > 0 else "1" for s in signs)


def sign_strings(d: int) -> list:
    """All ``2^(d-1)`` branch strings in lexicographic order."""
    return ["".join(b) for b in itertools.product("01", repeat=d - 1)]


# --- 2x2 blocks ----------------------------------------------------------------

def _block_residuals(U, p, t):
    (u00, u01), (u10, u11) = U
    p1, p2 = p
    t1, t2 = t
    r1 = max(abs(p1 * abs(u00) ** 2 + p2 * abs(u10) ** 2 - t1),
             abs(p1 * abs(u01) ** 2 + p2 * abs(u11) ** 2 - t2))
    st1, st2 = math.sqrt(t1), math.sqrt(t2)
    r2 = max(abs(u00 * st1 + u01 * st2 - math.sqrt(p1)),
             abs(u10 * st1 + u11 * st2 - math.sqrt(p2)))
    return max(r1, r2)


def _asin(x):
    # NaN outside the domain, so the caller falls back to the triangle form
    return math.asin(x) if -1.0 <= x <= 1.0 else math.nan


def _closed_form_block(p1, p2, t1, t2, sign):
    den = math.sqrt(t1 * (p1 - p2))
    if den == 0.0 or t2 <= 0.0:
        return None
    phi = _asin(math.sqrt(p2 * (p1 - t1)) / den)
    th1 = _asin(math.sqrt(p1 * p2) / math.sqrt(t1 * t2))
    th2 = phi + _asin(math.sqrt(p1 * (t1 - p2)) / den)
    if math.isnan(phi + th1 + th2):
        return None
    phi, th1, th2 = sign * phi, sign * th1, sign * th2
    a, b = math.sqrt(t1 - p2), math.sqrt(p1 - t1)
    g = cmath.exp(-1j * phi) / math.sqrt(p1 - p2)
    e1, e2 = cmath.exp(1j * th1), cmath.exp(1j * th2)
    return np.array([[g * a, g * e1 * b],
                     [g * e2 * b, -g * e1 * e2 * a]])


def _triangle_block(p1, p2, t1, t2, sign):
    # Moduli are fixed by the first condition; the phases solve
    # a e^{i al} sqrt(t1) + b e^{i(al+de)} sqrt(t2) = sqrt(p1), a triangle
    # with sides x1, x2 and base sqrt(p1). The mirrored triangle is the
    # second branch.
    a = np.sqrt(np.clip((t1 - p2) / (p1 - p2), 0.0, 1.0))
    b = np.sqrt(np.clip((p1 - t1) / (p1 - p2), 0.0, 1.0))
    x1, x2 = a * np.sqrt(t1), b * np.sqrt(t2)
    if x1 * x2 > 0:
        cos_de = np.clip((p1 - x1 * x1 - x2 * x2) / (2 * x1 * x2), -1.0, 1.0)
        de = sign * np.arccos(cos_de)
    else:
        de = 0.0
    e = np.exp(1j * de)
    z1 = x1 + x2 * e
    z2 = b * np.sqrt(t1) - a * np.sqrt(t2) * e
    al = -np.angle(z1) if abs(z1) > 0 else 0.0
    ga = -np.angle(z2) if abs(z2) > 0 else 0.0
    return np.array([[a * np.exp(1j * al), b * np.exp(1j * (al + de))],
                     [b * np.exp(1j * ga), -a * np.exp(1j * (ga + de))]])


def _block(p1, p2, t1, sign):
    """2x2 solution for ``(p1, p2) -> (t1, p1 + p2 - t1)`` with ``p1 >= p2``, ``p2 <= t1 <= p1``."""
    t2 = p1 + p2 - t1
    scale = max(p1 + p2, 1e-300)
    if p1 - p2 <= 1e-15 * scale:
        block_stats["trivial"] += 1
        return np.eye(2, dtype=complex)
    U = _closed_form_block(p1, p2, t1, t2, sign)
    if U is not None and _block_residuals(U, (p1, p2), (t1, t2)) <= BLOCK_ATOL * max(scale, 1.0):
        block_stats["closed_form"] += 1
        return U
    block_stats["triangle"] += 1
    return _triangle_block(p1, p2, t1, t2, sign)


def synthesize_base2(p, q, sign: int = 1) -> np.ndarray:
    """2x2 unitary taking sorted ``p`` to sorted ``q`` (totals need not be 1)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != (2,) or q.shape != (2,):
        raise DimensionError("synthesize_base2 takes pairs")
    if p[0] < p[1] or q[0] < q[1]:
        raise PreconditionError("pairs must be sorted in nonincreasing order")
    if abs(p.sum() - q.sum()) > TOTAL_ATOL:
        raise PreconditionError("pairs must have equal totals")
    if q[0] > p[0] + SLACK:
        raise PreconditionError(f"{tuple(p)} does not majorize {tuple(q)}")
    t1 = min(max(q[0], p[1]), p[0])
    return _block(p[0], p[1], t1, 1 if sign >= 0 else -1)


# --- d x d recursion -----------------------------------------------------------

def _pivot(p, q1):
    # smallest j >= 1 with p[j-1] >= q1 >= p[j]
    for j in range(1, p.size):
        if p[j] <= q1:
            return j
    return p.size - 1


def _synthesize_sorted(p, q, signs):
    d = p.size
    if d == 1:
        return np.eye(1, dtype=complex)
    if d == 2:
        t1 = min(max(q[0], p[1]), p[0])
        return _block(p[0], p[1], t1, signs[0])
    j = _pivot(p, q[0])
    t1 = min(max(q[0], p[j]), p[0])
    r = p[0] + p[j] - t1
    B = _block(p[0], p[j], t1, signs[0])
    U1 = np.eye(d, dtype=complex)
    U1[np.ix_([0, j], [0, j])] = B
    m = p[1:].copy()
    m[j - 1] = r
    order = np.argsort(-m, kind="stable")
    Us = _synthesize_sorted(m[order], q[1:], signs[1:])
    U2 = np.eye(d, dtype=complex)
    U2[1 + order, 1:] = Us
    return U1 @ U2


def _check_sorted_pair(P, Q):
    p = np.asarray(P, dtype=float).ravel()
    q = np.asarray(Q, dtype=float).ravel()
    if p.size != q.size:
        raise DimensionError(f"length mismatch: {p.size} vs {q.size}")
    if p.size < 1:
        raise DimensionError("empty distributions")
    if np.any(np.diff(p) > 0) or np.any(np.diff(q) > 0):
        raise PreconditionError("P and Q must be sorted in nonincreasing order")
    if abs(p.sum() - q.sum()) > TOTAL_ATOL:
        raise PreconditionError(f"totals differ: {p.sum()!r} vs {q.sum()!r}")
    return p, q


def verify_conditions(U, P, Q):
    """Return ``(residual1, residual2)`` for the two synthesis conditions."""
    U = np.asarray(U, dtype=complex)
    p = np.asarray(P, dtype=float).ravel()
    q = np.asarray(Q, dtype=float).ravel()
    if U.shape != (p.size, q.size) or p.size != q.size:
        raise DimensionError(f"U is {U.shape}, distributions have lengths {p.size}, {q.size}")
    r1 = np.max(np.abs(p @ np.abs(U) ** 2 - q))
    r2 = np.max(np.abs(U @ np.sqrt(np.clip(q, 0, None)) - np.sqrt(np.clip(p, 0, None))))
    return float(r1), float(r2)


def synthesize(P, Q, signs=None) -> SynthesisSolution:
    """Unitary satisfying both synthesis conditions for sorted ``P`` majorizing sorted ``Q``."""
    p, q = _check_sorted_pair(P, Q)
    if not majorizes(p, q):
        raise PreconditionError("P does not majorize Q; no unistochastic map exists")
    sg = parse_signs(signs, p.size)
    U = _synthesize_sorted(p, q, sg)
    r1, r2 = verify_conditions(U, p, q)
    return SynthesisSolution(U, signs_to_str(sg), r1, r2)


def horn_unitary(P, Q, signs=None) -> np.ndarray:
    """Unitary with ``sum_i p_i |U_ij|^2 = q_j`` for sorted ``P`` majorizing ``Q``."""
    return synthesize(P, Q, signs).U


def all_solutions(P, Q) -> list:
    """One :class:`SynthesisSolution` per branch string; no deduplication."""
    d = np.asarray(P).size
    return [synthesize(P, Q, s) for s in sign_strings(d)]


# --- measurement bases ---------------------------------------------------------

def _depolarized_core(state: QuantumState):
    """Return ``(psi, eta)`` if ``rho = eta/d I + (1 - eta)|psi><psi|``, else ``None``."""
    d = state.dim
    w, V = np.linalg.eigh(state.density)
    low = w[:-1]
    if np.ptp(low) > 1e-10:
        return None
    eta = float(np.clip(d * low.mean(), 0.0, 1.0))
    if eta >= 1.0 - 1e-12:
        return None
    return QuantumState.pure(V[:, -1] / np.linalg.norm(V[:, -1])), eta


def zezd_basis(s: Scenario, signs=None) -> Basis:
    """Measurement basis for ``A`` that reproduces ``P`` and leaves ``Q`` intact.

    Vectors are returned in A's outcome labels. Mixed qubits go through the
    Bloch-sphere construction; depolarized pure states of any dimension use
    the basis of their pure core.
    """
    state = s.state
    if not state.is_pure:
        if s.dim == 2:
            return mixed_qubit_zezd(s)
        core = _depolarized_core(state)
        if core is None:
            raise UnsupportedInputError(
                "mixed states beyond qubits are supported only in depolarized form")
        return zezd_basis(s.with_state(core[0]), signs)
    sP, sQ = sort_desc(s.P), sort_desc(s.Q)
    if not majorizes(sP, sQ):
        raise NoZEZDError("P does not majorize Q: error and disturbance cannot both vanish")
    sol = synthesize(sP.values, sQ.values, signs)
    Bb = phase_align(state, s.basis_b).matrix[:, list(sQ.perm)]
    A = np.empty((s.dim, s.dim), dtype=complex)
    A[:, list(sP.perm)] = Bb @ sol.U.conj().T
    return Basis(A)


def _qubit_vectors(n):
    """Eigenvectors of ``n . sigma`` for eigenvalues +1 and -1."""
    th = np.arccos(np.clip(n[2], -1.0, 1.0))
    ph = np.arctan2(n[1], n[0])
    c, s = np.cos(th / 2), np.sin(th / 2)
    up = np.array([c, np.exp(1j * ph) * s])
    dn = np.array([-np.exp(-1j * ph) * s, c])
    return up, dn


def _bloch_of_vector(v):
    v = np.asarray(v, dtype=complex)
    z = np.conj(v[0]) * v[1]
    return np.array([2 * z.real, 2 * z.imag, abs(v[0]) ** 2 - abs(v[1]) ** 2])


def mixed_qubit_zezd(s: Scenario) -> Basis:
    """Qubit construction: rotate A's Bloch axis about the state's Bloch vector.

    The rotation keeps ``P' = P``; its angle is chosen so that the new axis
    makes angle ``xi`` with B's axis, where ``cos(theta_a) cos(xi) = cos(theta_b)``,
    which forces ``Q~ = Q``.
    """
    if s.dim != 2:
        raise UnsupportedInputError("mixed_qubit_zezd needs a qubit scenario")
    r = s.state.bloch_vector()
    rn = np.linalg.norm(r)
    if rn < 1e-12:
        # maximally mixed: every distribution is uniform, any basis works
        log.info("maximally mixed qubit; returning the A basis unchanged")
        return s.basis_a
    a = _bloch_of_vector(s.basis_a.matrix[:, 0])
    b = _bloch_of_vector(s.basis_b.matrix[:, 0])
    ra, rb = r @ a, r @ b
    if abs(ra) < abs(rb) - SLACK:
        raise NoZEZDError("P does not majorize Q: error and disturbance cannot both vanish")
    sa = 1.0 if ra >= 0 else -1.0
    sb = 1.0 if rb >= 0 else -1.0
    rhat = r / rn
    ae, be = sa * a, sb * b
    ca, cb = rhat @ ae, rhat @ be
    if ca < 1e-15:
        return s.basis_a
    target = cb / ca
    k0 = ca * cb
    k1 = ae @ be - k0
    k2 = np.cross(rhat, ae) @ be
    R = np.hypot(k1, k2)
    if R < 1e-15:
        phi = 0.0
    else:
        base = np.arctan2(k2, k1)
        off = np.arccos(np.clip((target - k0) / R, -1.0, 1.0))
        cands = [base + off, base - off]
        phi = min(cands, key=lambda x: abs(np.angle(np.exp(1j * x))))
    n = (ae * np.cos(phi) + np.cross(rhat, ae) * np.sin(phi)
         + rhat * (rhat @ ae) * (1 - np.cos(phi)))
    up, dn = _qubit_vectors(n / np.linalg.norm(n))
    cols = [up, dn] if sa > 0 else [dn, up]
    return Basis.from_vectors(cols)


def depolarized_zezd_check(s: Scenario, eta: float, basis: Basis):
    """``(Err, Dis)`` for the depolarized state, measured with a fixed basis."""
    if not 0.0 <= eta <= 1.0:
        raise PreconditionError(f"eta must lie in [0, 1], got {eta}")
    if not s.state.is_pure:
        raise UnsupportedInputError("pass the pure scenario; eta is applied here")
    rho = depolarize(s.state, eta)
    P = born_distribution(rho, s.basis_a)
    Q = born_distribution(rho, s.basis_b)
    Pp = born_distribution(rho, basis)
    Qt = disturbed_distribution(rho, basis, s.basis_b)
    return relative_entropy(P, Pp), relative_entropy(Q, Qt)
