"""Exact ranks and homology of small integer chain complexes.

Ranks over a prime field go through the compiled kernel. Ranks over Q use
a certificate: for an integer matrix rank_Q >= rank_p, so every homology
dimension over Q is bounded by the one over GF(p); Euler characteristics
agree, hence when the GF(p) homology sits in a single degree it *is* the
rational homology. Otherwise each boundary map is re-ranked by exact
fraction-free elimination over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels
from .errors import UsageError

CERT_PRIME = 2_147_483_647  # 2^31 - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise UsageError(f"field characteristic must be 0 or prime, got {c}")
        if c >= 2**31:
            raise UsageError("prime characteristic must be below 2^31")

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = CoefficientField(0)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    if matrix.size == 0:
        return 0
    return kernels.rank_mod_p(np.ascontiguousarray(matrix, dtype=np.int64) % p, p)


def rank_exact(matrix: np.ndarray) -> int:
    """Rank over Q by sparse fraction-free elimination on Python ints."""
    rows = []
    for row in np.asarray(matrix).tolist():
        d = {j: v for j, v in enumerate(row) if v}
        if d:
            rows.append(d)
    rank = 0
    while rows:
        # prefer a unit pivot to keep entries small
        best = None
        for ri, row in enumerate(rows):
            for c, v in row.items():
                if best is None or abs(v) < best[2]:
                    best = (ri, c, abs(v))
                    if best[2] == 1:
                        break
            if best and best[2] == 1:
                break
        ri, col, _ = best
        pivot = rows.pop(ri)
        pv = pivot[col]
        rank += 1
        remaining = []
        for row in rows:
            v = row.get(col)
            if v is None:
                remaining.append(row)
                continue
            new = {}
            for c in set(row) | set(pivot):
                x = pv * row.get(c, 0) - v * pivot.get(c, 0)
                if x:
                    new[c] = x
            if new:
                g = 0
                for x in new.values():
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g > 1:
                    new = {c: x // g for c, x in new.items()}
                remaining.append(new)
        rows = remaining
    return rank


def homology(dims: dict[int, int], boundaries: dict[int, np.ndarray],
             field: CoefficientField = QQ) -> dict[int, int]:
    """Homology dimensions of a finite chain complex.

    ``dims[k]`` is the rank of C_k and ``boundaries[k]`` the matrix of
    d_k: C_k -> C_{k-1} with shape (dims[k-1], dims[k]). Missing maps are
    zero. Degrees with zero homology are omitted from the result.
    """
    p = field.characteristic or CERT_PRIME
    ranks = {k: rank_mod_p(m, p) for k, m in boundaries.items()}
    h = _homology_from_ranks(dims, ranks)
    if field.characteristic == 0 and len(h) > 1:
        ranks = {
            k: ranks[k] if ranks[k] == min(m.shape) else rank_exact(m)
            for k, m in boundaries.items()
        }
        h = _homology_from_ranks(dims, ranks)
    return h


def _homology_from_ranks(dims, ranks):
    out = {}
    for k, d in dims.items():
        value = d - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if value < 0:
            raise AssertionError(f"negative homology in degree {k}")
        if value:
            out[k] = value
    return out
