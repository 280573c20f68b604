"""Multigraded Betti numbers of S/M and the invariants read off them.

Two independent routes compute the same table:

``taylor``
    Split the Taylor complex into its multidegree strands (all generator
    subsets I with lcm m_I = b) and take homology of each strand over the
    coefficient field. Exponential in the number of generators r.
``koszul``
    For each b in the lcm lattice, beta_{i,b}(S/M) is the reduced
    homology H~_{i-2} of K^b = {F subset of supp b squarefree : x^(b-F) in M},
    a complex on at most n vertices. Scales with the lattice, not 2^r.

``auto`` uses the Taylor route for small r and the Koszul route beyond.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import comb, prod

import numpy as np

from . import kernels
from .errors import GuardError, UsageError
from .linalg import QQ, CoefficientField, homology
from .monomial import MonomialIdeal, krull_dimension

SUBSET_GUARD = 20
LATTICE_GUARD = 1 << 23
AUTO_TAYLOR_MAX = 10
STRAND_ENTRY_GUARD = 40_000_000
_SCAN_CHUNK = 1 << 16

Multidegree = tuple[int, ...]


@dataclass(frozen=True)
class BettiTable:
    n: int
    entries: dict = field(default_factory=dict)  # (i, multidegree) -> rank
    totals: tuple[int, ...] = ()

    def __post_init__(self):
        entries = {k: v for k, v in self.entries.items() if v}
        totals = [0] * (self.n + 1)
        for (i, _), v in entries.items():
            if i > self.n:
                raise AssertionError(f"homological degree {i} exceeds n={self.n}")
            totals[i] += v
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "totals", tuple(totals))

    @property
    def pdim(self) -> int:
        return max((i for i, t in enumerate(self.totals) if t), default=0)

    def beta(self, i: int, multidegree: Multidegree | None = None) -> int:
        if multidegree is None:
            return self.totals[i] if 0 <= i <= self.n else 0
        return self.entries.get((i, tuple(multidegree)), 0)

    def multidegrees(self, i: int) -> list[Multidegree]:
        return sorted(b for (j, b) in self.entries if j == i)

    def totals_line(self) -> str:
        """Compact ``1,10,45,...`` layout, trailing zeros dropped."""
        return ",".join(str(t) for t in self.totals[: self.pdim + 1])

    def to_csv(self) -> str:
        lines = ["i,multidegree,rank"]
        for (i, b), v in sorted(self.entries.items()):
            lines.append(f"{i},{'-'.join(map(str, b))},{v}")
        lines.append("totals," + ",".join(str(t) for t in self.totals))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TaylorStrand:
    """The degree-``multidegree`` part of the Taylor complex.

    ``basis[k]`` lists the k-subsets (sorted index tuples) with lcm equal to
    ``multidegree``; ``boundaries[k]`` is the matrix of d_k from the k-subsets
    to the (k-1)-subsets, entries 0 or +-1.
    """

    multidegree: Multidegree
    basis: dict
    boundaries: dict

    def dims(self) -> dict[int, int]:
        return {k: len(v) for k, v in self.basis.items()}

    def check_square_zero(self):
        for k, d in self.boundaries.items():
            below = self.boundaries.get(k - 1)
            if below is not None and np.any(below @ d):
                raise AssertionError(f"d^2 != 0 at degree {k} of strand {self.multidegree}")

    def homology(self, field: CoefficientField = QQ) -> dict[int, int]:
        return homology(self.dims(), self.boundaries, field)


# -- subset lcms ---------------------------------------------------------------


def _check_subset_guard(M: MonomialIdeal, guard: int):
    M.require_proper()
    if M.r > guard:
        raise GuardError("subset", M.r, guard, f"2^{M.r} generator subsets")


def _subset_lcms(gens: np.ndarray) -> np.ndarray:
    r, n = gens.shape
    out = np.zeros((1 << r, n), dtype=np.int32)
    for j in range(r):
        half = 1 << j
        np.maximum(out[:half], gens[j], out=out[half: 2 * half])
    return out


def _row_labels(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unique rows (lex sorted) and, per input row, its index among them."""
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    return uniq, inverse.reshape(-1)


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks.astype(np.uint64)).astype(np.int64)


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def lcm_closure(M: MonomialIdeal, guard: int = SUBSET_GUARD) -> dict[Multidegree, list]:
    """Group all 2^r generator subsets by lcm exponent vector.

    Subsets are 0-based index tuples into ``M.generators``, listed by
    (size, lexicographic order). The empty subset sits at the zero vector.
    """
    _check_subset_guard(M, guard)
    lcms = _subset_lcms(M.array)
    uniq, labels = _row_labels(lcms)
    groups = defaultdict(list)
    for mask, lab in enumerate(labels.tolist()):
        groups[lab].append(_mask_to_tuple(mask))
    out = {}
    for lab in sorted(groups):
        out[tuple(int(x) for x in uniq[lab])] = sorted(groups[lab], key=lambda t: (len(t), t))
    return out


# -- Taylor route ------------------------------------------------------------


def taylor_strands(M: MonomialIdeal, guard: int = SUBSET_GUARD, check: bool = True):
    """Yield every strand of the Taylor complex, in multidegree order."""
    _check_subset_guard(M, guard)
    r = M.r
    lcms = _subset_lcms(M.array)
    uniq, labels = _row_labels(lcms)
    masks = np.arange(1 << r, dtype=np.int64)
    sizes = _popcount(masks)
    # nonzero boundary entries: (I, I minus one element) inside one strand
    ent_src, ent_dst, ent_sign = [], [], []
    for i in range(r):
        bit = 1 << i
        src = masks[(masks & bit) != 0]
        dst = src ^ bit
        same = labels[src] == labels[dst]
        src, dst = src[same], dst[same]
        below = _popcount(src & (bit - 1))
        ent_src.append(src)
        ent_dst.append(dst)
        ent_sign.append(np.where(below % 2 == 0, 1, -1))
    ent_src = np.concatenate(ent_src) if r else np.zeros(0, np.int64)
    ent_dst = np.concatenate(ent_dst) if r else np.zeros(0, np.int64)
    ent_sign = np.concatenate(ent_sign) if r else np.zeros(0, np.int64)

    order = np.lexsort((masks, sizes, labels))
    bounds = np.searchsorted(labels[order], np.arange(len(uniq) + 1))
    ent_order = np.argsort(labels[ent_src], kind="stable")
    ent_bounds = np.searchsorted(labels[ent_src][ent_order], np.arange(len(uniq) + 1))

    for lab in range(len(uniq)):
        members = order[bounds[lab]: bounds[lab + 1]]
        b = tuple(int(x) for x in uniq[lab])
        basis = defaultdict(list)
        position = {}
        for m in members.tolist():
            t = _mask_to_tuple(m)
            basis[len(t)].append(t)
        for k, subs in basis.items():
            subs.sort()
            for pos, t in enumerate(subs):
                position[sum(1 << j for j in t)] = pos
        boundaries = {}
        sel = ent_order[ent_bounds[lab]: ent_bounds[lab + 1]]
        if len(sel):
            dims = {k: len(v) for k, v in basis.items()}
            for k in sorted(dims):
                if k - 1 in dims and k >= 1:
                    if dims[k] * dims[k - 1] > STRAND_ENTRY_GUARD:
                        raise GuardError("strand_entries", dims[k] * dims[k - 1],
                                         STRAND_ENTRY_GUARD, f"strand {b}")
                    boundaries[k] = np.zeros((dims[k - 1], dims[k]), dtype=np.int64)
            for s, d, sg in zip(ent_src[sel].tolist(), ent_dst[sel].tolist(),
                                ent_sign[sel].tolist()):
                k = bin(s).count("1")
                boundaries[k][position[d], position[s]] = sg
        strand = TaylorStrand(b, dict(basis), boundaries)
        if check:
            strand.check_square_zero()
        yield strand


def _betti_taylor(M: MonomialIdeal, field: CoefficientField, guard: int) -> dict:
    entries = {}
    for strand in taylor_strands(M, guard):
        if not strand.boundaries:
            # no differential inside the strand: homology is the chain groups
            for k, subs in strand.basis.items():
                entries[(k, strand.multidegree)] = len(subs)
            continue
        for k, h in strand.homology(field).items():
            entries[(k, strand.multidegree)] = h
    return entries


# -- Koszul route --------------------------------------------------------------

_COMPLEX_CACHE: dict = {}


def _faces_from_bitset(bits: int) -> list[int]:
    faces = []
    mask = 0
    while bits:
        if bits & 1:
            faces.append(mask)
        bits >>= 1
        mask += 1
    return faces


def _faces_from_maximal(maximal) -> list[int]:
    faces = set()
    for top in maximal:
        sub = top
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & top
    return sorted(faces)


def reduced_homology(faces: list[int], field: CoefficientField = QQ) -> dict[int, int]:
    """Reduced homology of a simplicial complex given by its faces as vertex bitmasks.

    Keys are face sizes (so size s carries H~_{s-1}); the empty face is the
    augmentation. The list must be closed under taking subsets.
    """
    by_size = defaultdict(list)
    for f in faces:
        by_size[bin(f).count("1")].append(f)
    index = {}
    for s, fs in by_size.items():
        fs.sort()
        for pos, f in enumerate(fs):
            index[f] = pos
    boundaries = {}
    for s in sorted(by_size):
        if s == 0 or s - 1 not in by_size:
            continue
        mat = np.zeros((len(by_size[s - 1]), len(by_size[s])), dtype=np.int64)
        for col, f in enumerate(by_size[s]):
            sign = 1
            rest = f
            while rest:
                low = rest & -rest
                mat[index[f ^ low], col] = sign
                sign = -sign
                rest ^= low
        boundaries[s] = mat
    dims = {s: len(fs) for s, fs in by_size.items()}
    return homology(dims, boundaries, field)


def _cached_homology(key, faces_fn, field):
    ck = (key, field.characteristic)
    h = _COMPLEX_CACHE.get(ck)
    if h is None:
        h = reduced_homology(faces_fn(), field)
        if len(_COMPLEX_CACHE) > 100_000:
            _COMPLEX_CACHE.clear()
        _COMPLEX_CACHE[ck] = h
    return h


def lattice_grid_size(M: MonomialIdeal) -> int:
    arr = M.array
    return prod(len(np.unique(arr[:, i])) for i in range(M.n)) if M.r else 0


def _lattice_by_grid(M: MonomialIdeal):
    arr = np.ascontiguousarray(M.array, dtype=np.int64)
    vals = [np.unique(arr[:, i]) for i in range(M.n)]
    offsets = np.zeros(M.n + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(v) for v in vals])
    values = np.concatenate(vals).astype(np.int64)
    total = int(prod(len(v) for v in vals))
    table = kernels.subset_bitsets(M.n)
    pts, keys = [], []
    for start in range(0, total, _SCAN_CHUNK):
        stop = min(total, start + _SCAN_CHUNK)
        p, k = kernels.lattice_scan(arr, values, offsets, start, stop, table)
        pts.append(p)
        keys.append(k)
    return np.concatenate(pts), np.concatenate(keys)


def lcm_lattice(M: MonomialIdeal, lattice_guard: int = LATTICE_GUARD,
                subset_guard: int = SUBSET_GUARD) -> list[Multidegree]:
    """Nonzero lcm-lattice elements (lcms of nonempty generator subsets), sorted."""
    M.require_proper()
    if M.r == 0:
        return []
    if lattice_grid_size(M) <= lattice_guard and M.n <= 6:
        pts, _ = _lattice_by_grid(M)
        return sorted(tuple(int(x) for x in row) for row in pts)
    if M.r <= subset_guard and (1 << M.r) <= lattice_guard:
        uniq, _ = _row_labels(_subset_lcms(M.array))
        return [tuple(int(x) for x in row) for row in uniq if row.any()]
    raise GuardError("lattice", lattice_grid_size(M), lattice_guard,
                     "neither the exponent grid nor the subset lcms are small enough")


def _betti_koszul(M: MonomialIdeal, field: CoefficientField, lattice_guard: int,
                  subset_guard: int) -> dict:
    entries = {(0, (0,) * M.n): 1}
    if M.r == 0:
        return entries
    if M.n <= 6 and lattice_grid_size(M) <= lattice_guard:
        pts, keys = _lattice_by_grid(M)
        ukeys, inverse = np.unique(keys, return_inverse=True)
        hom = [
            _cached_homology((M.n, int(k)), lambda k=int(k): _faces_from_bitset(k), field)
            for k in ukeys
        ]
        for row, inv in zip(pts.tolist(), inverse.reshape(-1).tolist()):
            for s, h in hom[inv].items():
                entries[(s + 1, tuple(row))] = h
        return entries
    arr = M.array
    for b in lcm_lattice(M, lattice_guard, subset_guard):
        barr = np.array(b)
        div = (arr <= barr).all(axis=1)
        slack = ((arr[div] < barr) * (1 << np.arange(M.n))).sum(axis=1)
        masks = set(slack.tolist())
        maximal = frozenset(m for m in masks if not any(m != o and m & o == m for o in masks))
        h = _cached_homology((M.n, maximal), lambda mx=maximal: _faces_from_maximal(mx), field)
        for s, v in h.items():
            entries[(s + 1, b)] = v
    return entries


# -- public API ----------------------------------------------------------------

METHODS = ("auto", "taylor", "koszul")


def betti_table(M: MonomialIdeal, field: CoefficientField = QQ, method: str = "auto",
                subset_guard: int = SUBSET_GUARD,
                lattice_guard: int = LATTICE_GUARD) -> BettiTable:
    """Multigraded Betti numbers of S/M over ``field``."""
    M.require_proper()
    if method not in METHODS:
        raise UsageError(f"unknown method {method!r}; choose from {METHODS}")
    if method == "auto":
        method = "taylor" if M.r <= min(AUTO_TAYLOR_MAX, subset_guard) else "koszul"
    if method == "taylor":
        entries = _betti_taylor(M, field, subset_guard)
    else:
        entries = _betti_koszul(M, field, lattice_guard, subset_guard)
    return BettiTable(M.n, entries)


def projective_dimension(M: MonomialIdeal, field: CoefficientField = QQ,
                         method: str = "auto", table: BettiTable | None = None) -> int:
    if table is None:
        table = betti_table(M, field, method)
    return table.pdim


def is_cohen_macaulay(M: MonomialIdeal, field: CoefficientField = QQ,
                      method: str = "auto", table: BettiTable | None = None) -> bool:
    return krull_dimension(M) == M.n - projective_dimension(M, field, method, table)


def koszul_totals(n: int) -> tuple[int, ...]:
    return tuple(comb(n, i) for i in range(n + 1))


def euler_characteristic_ok(strand: TaylorStrand, field: CoefficientField = QQ) -> bool:
    dims = strand.dims()
    h = strand.homology(field)
    return (sum((-1) ** k * d for k, d in dims.items())
            == sum((-1) ** k * v for k, v in h.items()))


__all__ = [
    "BettiTable", "TaylorStrand", "CoefficientField", "QQ", "lcm_closure",
    "taylor_strands", "betti_table", "projective_dimension", "is_cohen_macaulay",
    "lcm_lattice", "reduced_homology", "koszul_totals", "euler_characteristic_ok",
]
