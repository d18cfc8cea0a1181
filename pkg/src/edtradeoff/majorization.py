"""Majorization, contiguous partitions and majorization by sections."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionError, PreconditionError, ResourceLimitError

#: One-sided slack for prefix-sum comparisons.
SLACK = 1e-12
TOTAL_ATOL = 1e-10
#: Largest dimension for which all 2^(d-1) partitions are enumerated.
MAX_ENUM_DIM = 20


@dataclass(frozen=True, eq=False)
class SortedDist:
    """Values in nonincreasing order; ``perm[k]`` is the original label at sorted position ``k``."""

    values: np.ndarray
    perm: tuple

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return len(self.perm)

    def unsort(self, x) -> np.ndarray:
        """Map a vector given in sorted positions back to original labels."""
        out = np.empty(len(self.perm), dtype=np.asarray(x).dtype)
        out[list(self.perm)] = x
        return out


def sort_desc(P) -> SortedDist:
    """Stable descending sort; ties keep their original label order."""
    if isinstance(P, SortedDist):
        return P
    v = np.asarray(P, dtype=float).ravel()
    perm = np.argsort(-v, kind="stable")
    vals = v[perm]
    vals.setflags(write=False)
    return SortedDist(vals, tuple(int(i) for i in perm))


def _sorted_values(P) -> np.ndarray:
    if isinstance(P, SortedDist):
        return np.asarray(P.values)
    return np.sort(np.asarray(P, dtype=float).ravel())[::-1]


def majorizes(P, Q, slack: float = SLACK) -> bool:
    """True iff every prefix sum of sorted ``P`` is at least that of sorted ``Q``.

    Totals must agree but need not be 1.
    """
    p, q = _sorted_values(P), _sorted_values(Q)
    if p.size != q.size:
        raise DimensionError(f"length mismatch: {p.size} vs {q.size}")
    if abs(p.sum() - q.sum()) > TOTAL_ATOL:
        raise PreconditionError(f"totals differ: {p.sum()!r} vs {q.sum()!r}")
    return bool(np.all(np.cumsum(p) >= np.cumsum(q) - slack))


def _section_majorizes(p, q, slack=SLACK) -> bool:
    Ps, Qs = p.sum(), q.sum()
    if Qs == 0:
        # Q-section is the uniform limit, majorized by anything
        return True
    if Ps == 0:
        qn = q / Qs
        return bool(np.all(np.abs(qn - qn.mean()) <= slack))
    return majorizes(p / Ps, q / Qs, slack)


@dataclass(frozen=True)
class Partition:
    """Contiguous partition of positions ``0..d-1``.

    ``cuts`` are the section boundaries: a cut ``c`` (``1 <= c <= d-1``)
    separates position ``c-1`` from position ``c``.
    """

    d: int
    cuts: tuple = ()

    def __post_init__(self):
        cuts = tuple(sorted(int(c) for c in self.cuts))
        if len(set(cuts)) != len(cuts) or any(c < 1 or c > self.d - 1 for c in cuts):
            raise PreconditionError(f"bad cuts {self.cuts} for d={self.d}")
        object.__setattr__(self, "cuts", cuts)

    @classmethod
    def trivial(cls, d):
        return cls(d, ())

    @classmethod
    def finest(cls, d):
        return cls(d, tuple(range(1, d)))

    @classmethod
    def from_mask(cls, d, mask):
        return cls(d, tuple(k + 1 for k in range(d - 1) if mask >> k & 1))

    @property
    def mask(self) -> int:
        return sum(1 << (c - 1) for c in self.cuts)

    @property
    def sections(self) -> list:
        """``(start, stop)`` slices, 0-based and half-open."""
        edges = (0,) + self.cuts + (self.d,)
        return list(zip(edges[:-1], edges[1:]))

    def is_coarser_than(self, other: "Partition") -> bool:
        """``other`` can be reached from ``self`` by additional cutting."""
        return self.d == other.d and set(self.cuts) <= set(other.cuts)

    def __str__(self):
        return "".join("{" + ",".join(str(i + 1) for i in range(a, b)) + "}"
                       for a, b in self.sections)


def all_partitions(d: int):
    for mask in range(1 << max(d - 1, 0)):
        yield Partition.from_mask(d, mask)


def majorizes_by_sections(P, Q, part: Partition, slack: float = SLACK) -> bool:
    p, q = _sorted_values(P), _sorted_values(Q)
    if p.size != q.size or part.d != p.size:
        raise DimensionError("P, Q and partition must share one dimension")
    return all(_section_majorizes(p[a:b], q[a:b], slack) for a, b in part.sections)


def coarse_grain(P, part: Partition) -> np.ndarray:
    v = np.asarray(P, dtype=float).ravel()
    if v.size != part.d:
        raise DimensionError("distribution and partition differ in dimension")
    return np.array([math.fsum(v[a:b]) for a, b in part.sections])


def section_table(P, Q, slack: float = SLACK) -> np.ndarray:
    """``ok[s, e]`` is 1 when positions ``s..e`` (inclusive) form a passing section."""
    p, q = _sorted_values(P), _sorted_values(Q)
    d = p.size
    ok = np.zeros((d, d), dtype=np.uint8)
    for s in range(d):
        for e in range(s, d):
            ok[s, e] = _section_majorizes(p[s:e + 1], q[s:e + 1], slack)
    return ok


def partition_masks(P, Q, slack: float = SLACK):
    """Return ``(valid, coarsest)`` flag arrays indexed by partition mask."""
    d = _sorted_values(P).size
    if d > MAX_ENUM_DIM:
        raise ResourceLimitError(f"d={d} exceeds partition enumeration guard {MAX_ENUM_DIM}")
    return _kernels.partition_scan(section_table(P, Q, slack))


def valid_partitions(P, Q, slack: float = SLACK) -> list:
    d = _sorted_values(P).size
    valid, _ = partition_masks(P, Q, slack)
    return [Partition.from_mask(d, int(m)) for m in np.flatnonzero(valid)]


def coarsest_valid_partitions(P, Q, slack: float = SLACK) -> list:
    """Maximal elements, under coarseness, of the partitions passing section majorization.

    Returned in increasing mask order. Never empty: the finest partition
    always passes.
    """
    d = _sorted_values(P).size
    _, coarsest = partition_masks(P, Q, slack)
    return [Partition.from_mask(d, int(m)) for m in np.flatnonzero(coarsest)]
