"""Shannon entropy, relative entropy and the Jensen-Shannon divergence (nats).

The Jensen-Shannon divergence here is ``2 H(M) - H(P1) - H(P2)`` with
``M = (P1 + P2)/2``, i.e. twice the textbook JSD; its range is
``[0, 2 ln 2]``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import entr, rel_entr

from .errors import DimensionError


def _vec(P) -> np.ndarray:
    return np.asarray(P, dtype=float).ravel()


def _pair(P, R):
    P, R = _vec(P), _vec(R)
    if P.shape != R.shape:
        raise DimensionError(f"length mismatch: {P.size} vs {R.size}")
    return P, R


def shannon_entropy(P) -> float:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    return math.fsum(entr(_vec(P)))


def relative_entropy(P, R) -> float:
    """``D(P||R)``; ``inf`` when ``P`` puts mass where ``R`` has none.

    ``P`` is the reference (ideal) distribution.
    """
    P, R = _pair(P, R)
    terms = rel_entr(P, R)
    if np.isinf(terms).any():
        return math.inf
    # rel_entr terms can be slightly negative; the sum cannot
    return max(math.fsum(terms), 0.0)


def js_divergence(P1, P2) -> float:
    P1, P2 = _pair(P1, P2)
    M = 0.5 * (P1 + P2)
    # written as two relative entropies to the midpoint; equal to
    # 2H(M) - H(P1) - H(P2) but without the cancellation. Where one side is
    # zero the term is exactly p ln 2, which avoids M underflowing for
    # subnormal p.
    both = (P1 > 0) & (P2 > 0)
    one = ~both
    terms = np.concatenate([rel_entr(P1[both], M[both]), rel_entr(P2[both], M[both]),
                            (P1[one] + P2[one]) * math.log(2)])
    return max(math.fsum(terms), 0.0)


def err_dis_sum(P, Q, Pp, Qt) -> float:
    """Error plus disturbance ``D(P||P') + D(Q||Q~)``."""
    return relative_entropy(P, Pp) + relative_entropy(Q, Qt)
