"""numpy implementations of the kernels; reference semantics for ``_core``."""

import numpy as np
from scipy.special import rel_entr


def partition_scan(ok):
    """Flag valid and coarsest-valid partitions.

    ``ok[s, e]`` marks whether positions ``s..e`` form a passing section.
    Partition masks use bit ``k`` for a cut between positions ``k`` and
    ``k + 1``. Returns two uint8 arrays of length ``2**(d-1)``.
    """
    ok = np.asarray(ok, dtype=bool)
    d = ok.shape[0]
    nb = d - 1
    masks = np.arange(1 << nb, dtype=np.int64)
    bit = [(masks >> k) & 1 == 1 for k in range(nb)]
    valid = np.ones(masks.size, dtype=bool)
    for s in range(d):
        left = bit[s - 1] if s > 0 else True
        inner = np.ones(masks.size, dtype=bool)
        for e in range(s, d):
            right = bit[e] if e < nb else True
            if not ok[s, e]:
                valid &= ~(left & inner & right)
            if e < nb:
                inner = inner & ~bit[e]
    # g[m]: some submask of m (m included) is valid
    g = valid.copy()
    for k in range(nb):
        idx = masks[bit[k]]
        g[idx] |= g[idx ^ (1 << k)]
    dominated = np.zeros(masks.size, dtype=bool)
    for k in range(nb):
        idx = masks[bit[k]]
        dominated[idx] |= g[idx ^ (1 << k)]
    return valid.astype(np.uint8), (valid & ~dominated).astype(np.uint8)


def _rowwise_divergence(ref, rows):
    terms = rel_entr(ref[None, :], rows)
    return terms.sum(axis=1)


def sorted_err_dis(p_sorted, q_sorted, Pp, Qt):
    """``D(P||sort(P'_k)) + D(Q||sort(Q~_k))`` for each row ``k``."""
    p = np.asarray(p_sorted, dtype=float)
    q = np.asarray(q_sorted, dtype=float)
    Pp = -np.sort(-np.asarray(Pp, dtype=float), axis=1)
    Qt = -np.sort(-np.asarray(Qt, dtype=float), axis=1)
    return np.maximum(_rowwise_divergence(p, Pp), 0.0) + np.maximum(_rowwise_divergence(q, Qt), 0.0)


def qubit_err_dis(rho, frame_a, basis_b, alpha, beta, p_sorted, q_sorted):
    """Sorted-aligned error + disturbance for a batch of qubit measurement bases.

    The candidate basis is ``|a'_1> = cos(a/2)|a_1> + e^{ib} sin(a/2)|a_2>``
    and its orthogonal complement, with ``|a_i>`` the columns of ``frame_a``.
    """
    A = np.asarray(frame_a, dtype=complex)
    rA = A.conj().T @ np.asarray(rho, dtype=complex) @ A
    BA = A.conj().T @ np.asarray(basis_b, dtype=complex)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    e = np.exp(1j * beta)
    # v[k, i, n]: component k of candidate vector i
    v = np.array([[c, -s * e.conj()], [s * e, c + 0j]])
    pp = np.einsum("kin,kl,lin->in", v.conj(), rA, v).real.T
    ov = np.abs(np.einsum("kj,kin->nij", BA.conj(), v)) ** 2
    qt = np.einsum("ni,nij->nj", pp, ov)
    return sorted_err_dis(p_sorted, q_sorted, pp, qt)


def s1_qubit_grid(p1, q1, n):
    """Grid minimum of ``D(P||P') + D(Q||Q~)`` over qubit pairs with ``P' > Q~``.

    Scans ``(x, y) = (i/n, j/n)`` for ``P' = (x, 1-x)``, ``Q~ = (y, 1-y)``.
    Returns ``(value, x, y)``.
    """
    g = np.arange(n + 1) / n
    P = np.array([p1, 1 - p1])
    Q = np.array([q1, 1 - q1])
    fx = rel_entr(P[0], g) + rel_entr(P[1], 1 - g)
    fy = rel_entr(Q[0], g) + rel_entr(Q[1], 1 - g)
    hx = np.maximum(g, 1 - g)
    best = (np.inf, np.nan, np.nan)
    for i in range(n + 1):
        feas = hx[i] >= np.maximum(g, 1 - g) - 1e-15
        vals = np.where(feas, fx[i] + fy, np.inf)
        j = int(np.argmin(vals))
        if vals[j] < best[0]:
            best = (float(vals[j]), float(g[i]), float(g[j]))
    return best
