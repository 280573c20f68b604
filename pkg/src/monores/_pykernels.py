"""Pure numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used
when the extension is unavailable or ``MONORES_PURE_PYTHON=1`` is set.
"""

import itertools
from math import comb

import numpy as np

CHUNK = 1 << 14


def rank_mod_p(a, p):
    """Rank of ``a`` (entries already reduced to [0, p)) over GF(p). Destroys ``a``."""
    a = np.array(a, dtype=np.int64)
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank, c:] = (a[rank, c:] * inv) % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            f = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - f * a[rank, c:][None, :]) % p
        rank += 1
    return rank


def subset_bitsets(n):
    """Bitset of all submasks of each mask in [0, 2^n); needs n <= 6."""
    table = np.zeros(1 << n, dtype=np.uint64)
    for mask in range(1 << n):
        bits = 0
        sub = mask
        while True:
            bits |= 1 << sub
            if sub == 0:
                break
            sub = (sub - 1) & mask
        table[mask] = bits
    return table


def _grid_points(values, offsets, start, stop):
    sizes = np.diff(offsets)
    idx = np.arange(start, stop, dtype=np.int64)
    n = len(sizes)
    out = np.empty((stop - start, n), dtype=np.int64)
    # mixed radix, last coordinate fastest
    for i in range(n - 1, -1, -1):
        out[:, i] = values[offsets[i] + idx % sizes[i]]
        idx //= sizes[i]
    return out


def lattice_scan(gens, values, offsets, start, stop, table):
    """Scan grid points [start, stop) for lcm-lattice elements.

    The grid is the product of the per-variable value lists
    ``values[offsets[i]:offsets[i+1]]``. A point b is kept when some
    generator divides it and the lcm of those generators is b itself.
    For each kept b the returned key is the face bitset of the complex
    {F subset of supp b : x^(b - F) in M}, built from ``table``.
    """
    gens = np.asarray(gens, dtype=np.int64)
    pts = _grid_points(np.asarray(values, dtype=np.int64),
                       np.asarray(offsets, dtype=np.int64), start, stop)
    n = gens.shape[1]
    div = (gens[None, :, :] <= pts[:, None, :]).all(axis=2)
    masked = np.where(div[:, :, None], gens[None, :, :], -1)
    lcms = masked.max(axis=1)
    keep = div.any(axis=1) & (lcms == pts).all(axis=1)
    pts = pts[keep]
    div = div[keep]
    weights = (1 << np.arange(n, dtype=np.int64))
    slack = ((gens[None, :, :] < pts[:, None, :]) * weights).sum(axis=2)
    faces = np.where(div, table[slack], np.uint64(0))
    keys = np.bitwise_or.reduce(faces, axis=1) if len(pts) else np.zeros(0, np.uint64)
    return pts, keys.astype(np.uint64)


def witness_scan(gens, n):
    """Index n-subsets (lex order) that are dominant with no strong divisor of their lcm."""
    gens = np.asarray(gens, dtype=np.int64)
    r = gens.shape[0]
    if r < n:
        return np.zeros((0, n), dtype=np.int64)
    total = comb(r, n)
    it = itertools.combinations(range(r), n)
    found = []
    done = 0
    while done < total:
        k = min(CHUNK, total - done)
        combos = np.fromiter(itertools.chain.from_iterable(itertools.islice(it, k)),
                             dtype=np.int64, count=k * n).reshape(k, n)
        done += k
        sub = gens[combos]  # (k, member, coord)
        top = sub.max(axis=1)
        at_top = sub == top[:, None, :]
        unique_top = at_top.sum(axis=1) == 1
        dominant = (at_top & unique_top[:, None, :]).any(axis=2).all(axis=1)
        if not dominant.any():
            continue
        combos = combos[dominant]
        top = top[dominant]
        strong = ((gens[None, :, :] == 0) | (gens[None, :, :] < top[:, None, :])).all(axis=2)
        ok = ~strong.any(axis=1)
        found.append(combos[ok])
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.concatenate(found)
