"""Scarf complexes, (strong) genericity, and witness sets for pdim = n.

Generator indices are 0-based positions in ``M.generators`` (canonical
order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .errors import GuardError
from .linalg import QQ, CoefficientField
from .monomial import MonomialIdeal
from .resolution import SUBSET_GUARD, BettiTable, betti_table, lcm_closure

WITNESS_GUARD = 20_000_000
SCARF_CANDIDATE_GUARD = 5_000_000


@dataclass(frozen=True)
class ScarfComplex:
    r: int
    faces: frozenset
    face_multidegrees: dict = field(repr=False)
    f_vector: tuple[int, ...] = ()

    def f(self, i: int) -> int:
        """Number of faces of dimension i (i = -1 is the empty face)."""
        return self.f_vector[i + 1] if 0 <= i + 1 < len(self.f_vector) else 0

    def facets(self) -> list[tuple[int, ...]]:
        faces = self.faces
        return sorted(
            (F for F in faces
             if not any(set(F) < set(G) for G in faces if len(G) == len(F) + 1)),
            key=lambda F: (len(F), F),
        )


def _f_vector(faces) -> tuple[int, ...]:
    top = max((len(F) for F in faces), default=0)
    counts = [0] * (top + 1)
    for F in faces:
        counts[len(F)] += 1
    return tuple(counts)


def scarf_complex(M: MonomialIdeal, method: str = "levelwise",
                  guard: int = SCARF_CANDIDATE_GUARD) -> ScarfComplex:
    """Faces are the generator subsets whose lcm no other subset shares.

    ``levelwise`` grows faces one vertex at a time: I is a face iff no
    generator outside I divides m_I and dropping any element of I lowers
    m_I. ``closure`` reads faces straight off all 2^r subset lcms (r <= 20).
    """
    M.require_proper()
    if method == "closure":
        closure = lcm_closure(M, SUBSET_GUARD)
        mdeg = {subs[0]: b for b, subs in closure.items() if len(subs) == 1}
        return ScarfComplex(M.r, frozenset(mdeg), mdeg, _f_vector(mdeg))
    if method != "levelwise":
        raise ValueError(f"unknown method {method!r}")

    arr = M.array
    r = M.r
    zero = (0,) * M.n
    mdeg = {(): zero}
    level = {(i,): tuple(int(x) for x in arr[i]) for i in range(r)}
    mdeg.update(level)
    checked = 0
    while level:
        nxt = {}
        for J, lj in level.items():
            for j in range(J[-1] + 1, r):
                I = J + (j,)
                checked += 1
                if checked > guard:
                    raise GuardError("scarf_candidates", checked, guard)
                if any(I[:k] + I[k + 1:] not in level for k in range(len(I) - 1)):
                    continue
                m = tuple(max(a, int(b)) for a, b in zip(lj, arr[j]))
                if m == lj or any(m == level[I[:k] + I[k + 1:]] for k in range(len(I) - 1)):
                    continue
                nxt[I] = m
        if nxt:
            keys = list(nxt)
            lcms = np.array([nxt[I] for I in keys], dtype=np.int64)
            ndiv = (arr[None, :, :] <= lcms[:, None, :]).all(axis=2).sum(axis=1)
            size = len(keys[0])
            nxt = {I: nxt[I] for I, c in zip(keys, ndiv.tolist()) if c == size}
        mdeg.update(nxt)
        level = nxt
    return ScarfComplex(r, frozenset(mdeg), mdeg, _f_vector(mdeg))


def is_scarf(M: MonomialIdeal, field: CoefficientField = QQ, *,
             table: BettiTable | None = None, complex_: ScarfComplex | None = None,
             method: str = "auto") -> bool:
    """Scarf iff beta_i(S/M) == f_{i-1}(Scarf complex) for every i.

    The zero ideal counts as Scarf.
    """
    M.require_proper()
    if M.is_zero():
        return True
    if table is None:
        table = betti_table(M, field, method)
    if complex_ is None:
        complex_ = scarf_complex(M)
    top = max(len(table.totals), len(complex_.f_vector))
    return all(table.beta(i) == complex_.f(i - 1) for i in range(top))


def is_strongly_generic(M: MonomialIdeal) -> bool:
    """No variable has the same nonzero exponent in two generators."""
    arr = M.array
    for col in arr.T:
        nz = col[col > 0]
        if len(np.unique(nz)) != len(nz):
            return False
    return True


def is_generic(M: MonomialIdeal) -> bool:
    """Every pair sharing a positive exponent has a third generator strongly dividing its lcm."""
    arr = M.array
    r = len(arr)
    for i in range(r):
        for j in range(i + 1, r):
            if not np.any((arr[i] == arr[j]) & (arr[i] > 0)):
                continue
            top = np.maximum(arr[i], arr[j])
            strong = ((arr == 0) | (arr < top)).all(axis=1)
            strong[[i, j]] = False
            if not strong.any():
                return False
    return True


@dataclass(frozen=True)
class WitnessReport:
    witness_sets: list
    witness_lcms: list
    nonscarf_pairs: list

    def __bool__(self):
        return bool(self.witness_sets)

    def nonscarf_lcms(self, lcm_of) -> list[tuple[int, ...]]:
        return sorted({lcm_of[L] for L, _ in self.nonscarf_pairs})

    def to_csv(self, M: MonomialIdeal) -> str:
        arr = M.array
        extras = {}
        for L, g in self.nonscarf_pairs:
            extras.setdefault(L, []).append(g)
        lines = ["witness_set,lcm,nonscarf,extra_generators"]
        for L in self.witness_sets:
            top = arr[list(L)].max(axis=0)
            lines.append(",".join([
                "-".join(map(str, L)),
                "-".join(str(int(x)) for x in top),
                "1" if L in extras else "0",
                "-".join(map(str, extras.get(L, []))),
            ]))
        return "\n".join(lines) + "\n"


def find_witness_sets(M: MonomialIdeal, guard: int = WITNESS_GUARD) -> WitnessReport:
    """All dominant n-subsets of G whose lcm has no strong divisor in G.

    Also lists every (L, g) with g outside L dividing lcm(L): such L + {g}
    is a non-Scarf witness set.
    """
    M.require_proper()
    n, r = M.n, M.r
    if r < n:
        return WitnessReport([], [], [])
    count = comb(r, n)
    if count > guard:
        raise GuardError("witness_subsets", count, guard, f"binomial({r}, {n})")
    arr = np.ascontiguousarray(M.array, dtype=np.int64)
    found = kernels.witness_scan(arr, n)
    sets = [tuple(int(x) for x in row) for row in found]
    if not sets:
        return WitnessReport([], [], [])
    tops = arr[found].max(axis=1)
    divides = (arr[None, :, :] <= tops[:, None, :]).all(axis=2)
    pairs = []
    for L, row in zip(sets, divides):
        for g in np.flatnonzero(row).tolist():
            if g not in L:
                pairs.append((L, g))
    lcms = sorted({tuple(int(x) for x in t) for t in tops})
    return WitnessReport(sets, lcms, pairs)


def witness_lcm_map(M: MonomialIdeal, report: WitnessReport) -> dict:
    arr = M.array
    return {L: tuple(int(x) for x in arr[list(L)].max(axis=0)) for L in report.witness_sets}


def restricted(lcms, D: int, a: int) -> list[tuple[int, ...]]:
    """Exponent vectors with total degree D + a and every entry at least a."""
    return [al for al in lcms if sum(al) == D + a and min(al) >= a]


def restricted_counts(lcms, D: int, a_values) -> dict[int, int]:
    return {a: len(restricted(lcms, D, a)) for a in a_values}


def is_witness_lcm(M: MonomialIdeal, alpha) -> bool:
    """Whether x^alpha is the lcm of some witness set of M."""
    alpha = tuple(alpha)
    arr = M.array
    if len(arr) == 0:
        return False
    below = (arr <= np.array(alpha)).all(axis=1)
    strong = ((arr == 0) | (arr < np.array(alpha))).all(axis=1)
    if strong.any():
        return False
    sub = MonomialIdeal.from_rows(M.n, [tuple(row) for row in arr[below]])
    report = find_witness_sets(sub)
    return alpha in report.witness_lcms


def nonscarf_witness_lcms(M: MonomialIdeal, report: WitnessReport | None = None):
    if report is None:
        report = find_witness_sets(M)
    lcm_of = witness_lcm_map(M, report)
    return report.nonscarf_lcms(lcm_of)
