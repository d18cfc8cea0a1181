"""Jensen-Shannon lower bound on error + disturbance when ``P`` does not majorize ``Q``.

The bound is the minimum, over the coarsest contiguous partitions under
which sorted ``P`` majorizes sorted ``Q`` section by section, of the
Jensen-Shannon divergence between the coarse-grained distributions. Each
partition's value is attained at a closed-form point ``(P', Q~)``, see
:func:`extreme_point`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .divergence import js_divergence, relative_entropy
from .errors import DimensionError, PreconditionError, UnsupportedInputError
from .majorization import (Partition, SortedDist, coarse_grain, majorizes,
                           majorizes_by_sections, partition_masks, sort_desc)
from .numerics import householder_to
from .quantum import Basis, ProbDist, Scenario
from .synthesis import horn_unitary, synthesize

ARGMIN_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class BoundReport:
    sorted_p: SortedDist
    sorted_q: SortedDist
    valid_partitions: list
    coarsest: list
    per_partition_js: dict
    bound: float
    argmin: list
    extreme_point: tuple
    zezd_possible: bool
    all_valid_js: dict = field(default_factory=dict, repr=False)

    def extreme_point_labeled(self):
        """Extreme point with ``P'`` in A's labels and ``Q~`` in B's labels."""
        Pp, Qt = self.extreme_point
        return self.sorted_p.unsort(Pp), self.sorted_q.unsort(Qt)


def _as_pair(P, Q):
    P = ProbDist(P).values if not isinstance(P, SortedDist) else np.asarray(P.values)
    Q = ProbDist(Q).values if not isinstance(Q, SortedDist) else np.asarray(Q.values)
    if P.size != Q.size:
        raise DimensionError(f"length mismatch: {P.size} vs {Q.size}")
    return P, Q


def extreme_point(P, Q, part: Partition):
    """Constrained minimizer of ``D(P||P') + D(Q||Q~)`` on the face of ``part``.

    Within section ``S``: ``p'_i = p_i (1 + Q_S/P_S)/2`` and
    ``q~_i = q_i (1 + P_S/Q_S)/2``. A section with zero ``P`` (or ``Q``)
    mass takes the uniform limit and receives half the other mass spread
    evenly.
    """
    sP, sQ = sort_desc(P), sort_desc(Q)
    p, q = np.asarray(sP.values), np.asarray(sQ.values)
    if p.size != q.size or part.d != p.size:
        raise DimensionError("P, Q and partition must share one dimension")
    if not majorizes_by_sections(p, q, part):
        raise PreconditionError(f"P does not majorize Q by sections for {part}")
    Pp = np.zeros_like(p)
    Qt = np.zeros_like(q)
    for a, b in part.sections:
        Ps, Qs = math.fsum(p[a:b]), math.fsum(q[a:b])
        k = b - a
        if Ps > 0 and Qs > 0:
            Pp[a:b] = 0.5 * p[a:b] * (1 + Qs / Ps)
            Qt[a:b] = 0.5 * q[a:b] * (1 + Ps / Qs)
        elif Ps > 0:
            Pp[a:b] = 0.5 * p[a:b]
            Qt[a:b] = 0.5 * Ps / k
        elif Qs > 0:
            Pp[a:b] = 0.5 * Qs / k
            Qt[a:b] = 0.5 * q[a:b]
    return Pp, Qt


def tradeoff_bound(P, Q, keep_all: bool = False) -> BoundReport:
    """Lower bound on ``Err + Dis`` for ideal statistics ``P`` (of A) and ``Q`` (of B).

    Both inputs are sorted internally; the report carries the sort
    permutations. With ``keep_all`` the divergence of every valid partition
    is recorded in ``all_valid_js`` as well.
    """
    p, q = _as_pair(P, Q)
    sP, sQ = sort_desc(p), sort_desc(q)
    d = p.size
    valid, coarsest = partition_masks(sP, sQ)
    valid_parts = [Partition.from_mask(d, int(m)) for m in np.flatnonzero(valid)]
    coarse_parts = [Partition.from_mask(d, int(m)) for m in np.flatnonzero(coarsest)]

    def js_of(part):
        return js_divergence(coarse_grain(sP.values, part), coarse_grain(sQ.values, part))

    per = {part: js_of(part) for part in coarse_parts}
    all_js = {}
    if keep_all:
        all_js = {part: per[part] if part in per else js_of(part) for part in valid_parts}
    zezd = bool(valid[0])
    if zezd:
        bound = 0.0
        argmin = [Partition.trivial(d)]
    else:
        bound = min(per.values())
        tol = ARGMIN_RTOL * max(bound, 1e-300)
        argmin = [part for part in coarse_parts if per[part] - bound <= tol]
    ep = extreme_point(sP, sQ, argmin[0])
    return BoundReport(sP, sQ, valid_parts, coarse_parts, per, float(bound), argmin,
                       ep, zezd, all_js)


def _golden(f, a, b, iters=60):
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
    return (fc, c) if fc < fd else (fd, d)


def s1_min_numeric_qubit(P, Q, grid_n: int = 2000) -> float:
    """Brute-force minimum of ``D(P||P') + D(Q||Q~)`` over qubit pairs with ``P'`` majorizing ``Q~``.

    A ``(grid_n + 1)^2`` scan of ``(p'_1, q~_1)`` followed by a golden-section
    search along the majorization boundary ``|p'_1 - 1/2| = |q~_1 - 1/2|``
    near the best grid point. Independent of :func:`tradeoff_bound`.
    """
    p, q = _as_pair(P, Q)
    if p.size != 2:
        raise UnsupportedInputError("s1_min_numeric_qubit needs d = 2")
    p1, q1 = float(p.max()), float(q.max())
    best, x, _ = _kernels.s1_qubit_grid(p1, q1, int(grid_n))
    Pv, Qv = np.array([p1, 1 - p1]), np.array([q1, 1 - q1])

    def on_boundary(s):
        v = np.array([0.5 + s, 0.5 - s])
        return relative_entropy(Pv, v) + relative_entropy(Qv, v)

    s0 = abs(x - 0.5)
    h = 2.0 / grid_n
    val, _ = _golden(on_boundary, max(0.0, s0 - h), min(0.5, s0 + h))
    best = min(best, val)
    if max(p1, 1 - p1) >= max(q1, 1 - q1):
        best = min(best, 0.0)
    return float(best)


def in_s1(Pp, Qt) -> bool:
    """``(P', Q~)`` lies in S1, i.e. ``P'`` majorizes ``Q~``."""
    return majorizes(Pp, Qt)


def realize_s1_point(s: Scenario, target, signs=None):
    """Bases ``(a', b')`` whose sequential statistics on ``s.state`` equal ``target``.

    ``target = (P', Q~)`` with ``P'`` in A's labels and ``Q~`` in B's labels;
    sorted ``P'`` must majorize sorted ``Q~``. ``a'`` reproduces ``P'`` on the
    state; ``b'`` is a replacement for the B measurement under which the
    post-``a'`` ensemble yields ``Q~``.
    """
    if not s.state.is_pure:
        raise UnsupportedInputError("realize_s1_point needs a pure state")
    Pp, Qt = (np.asarray(t, dtype=float) for t in target)
    d = s.dim
    if Pp.size != d or Qt.size != d:
        raise DimensionError("target does not match the scenario dimension")
    sPp, sQt = sort_desc(Pp), sort_desc(Qt)
    if not majorizes(sPp, sQt):
        raise PreconditionError("target lies outside S1")
    # psi is the first vector of an auxiliary frame; there its distribution is
    # (1, 0, ..., 0), which majorizes every P'
    W = householder_to(s.state.data)
    e1 = np.zeros(d)
    e1[0] = 1.0
    U0 = synthesize(e1, sPp.values, signs).U
    As = W @ U0
    Uh = horn_unitary(sPp.values, sQt.values, signs)
    Bs = As @ Uh
    A = np.empty_like(As)
    B = np.empty_like(Bs)
    A[:, list(sPp.perm)] = As
    B[:, list(sQt.perm)] = Bs
    return Basis(A), Basis(B)
