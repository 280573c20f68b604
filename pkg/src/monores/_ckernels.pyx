# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot loops in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


def rank_mod_p(a, int64_t p):
    """Rank of ``a`` (entries in [0, p), p < 2^31) over GF(p). Destroys ``a``."""
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    cdef int64_t[:, ::1] m = np.array(a, dtype=np.int64, order='C')
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(c, cols):
                tmp = m[rank, j]
                m[rank, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _powmod(m[rank, c], p - 2, p)
        for j in range(c, cols):
            m[rank, j] = (m[rank, j] * inv) % p
        for i in range(rank + 1, rows):
            f = m[i, c]
            if f == 0:
                continue
            for j in range(c, cols):
                if m[rank, j] != 0:
                    m[i, j] = (m[i, j] + (p - f) * m[rank, j]) % p
        rank += 1
    return rank


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p):
    cdef int64_t result = 1
    b %= p
    while e > 0:
        if e & 1:
            result = (result * b) % p
        b = (b * b) % p
        e >>= 1
    return result


def lattice_scan(gens_arr, values_arr, offsets_arr,
                 int64_t start, int64_t stop,
                 table_arr):
    cdef const int64_t[:, ::1] gens = np.ascontiguousarray(gens_arr)
    cdef const int64_t[::1] values = np.ascontiguousarray(values_arr)
    cdef const int64_t[::1] offsets = np.ascontiguousarray(offsets_arr)
    cdef const uint64_t[::1] table = np.ascontiguousarray(table_arr)
    cdef Py_ssize_t r = gens.shape[0], n = gens.shape[1]
    cdef Py_ssize_t cap = stop - start
    out_pts_arr = np.empty((cap, n), dtype=np.int64)
    out_keys_arr = np.empty(cap, dtype=np.uint64)
    cdef int64_t[:, ::1] out_pts = out_pts_arr
    cdef uint64_t[::1] out_keys = out_keys_arr
    cdef int64_t[::1] b = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] l = np.empty(n, dtype=np.int64)
    cdef int64_t idx, rem, size
    cdef Py_ssize_t i, g, count = 0
    cdef bint divides, any_div, equal
    cdef uint64_t key
    cdef int64_t slack
    for idx in range(start, stop):
        rem = idx
        for i in range(n - 1, -1, -1):
            size = offsets[i + 1] - offsets[i]
            b[i] = values[offsets[i] + rem % size]
            rem = rem // size
        for i in range(n):
            l[i] = -1
        any_div = False
        key = 0
        for g in range(r):
            divides = True
            for i in range(n):
                if gens[g, i] > b[i]:
                    divides = False
                    break
            if not divides:
                continue
            any_div = True
            slack = 0
            for i in range(n):
                if gens[g, i] > l[i]:
                    l[i] = gens[g, i]
                if gens[g, i] < b[i]:
                    slack |= (<int64_t>1) << i
            key |= table[slack]
        if not any_div:
            continue
        equal = True
        for i in range(n):
            if l[i] != b[i]:
                equal = False
                break
        if not equal:
            continue
        for i in range(n):
            out_pts[count, i] = b[i]
        out_keys[count] = key
        count += 1
    return out_pts_arr[:count].copy(), out_keys_arr[:count].copy()


def witness_scan(gens_arr, Py_ssize_t n):
    cdef const int64_t[:, ::1] gens = np.ascontiguousarray(gens_arr)
    cdef Py_ssize_t r = gens.shape[0]
    if r < n or n < 1:
        return np.zeros((0, n), dtype=np.int64)
    cdef Py_ssize_t[::1] idx = np.arange(n, dtype=np.intp)
    cdef int64_t[::1] top = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] cnt = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t[::1] owner = np.empty(n, dtype=np.intp)
    cdef char[::1] has = np.empty(n, dtype=np.int8)
    cdef Py_ssize_t i, j, g, k
    cdef int64_t v
    cdef bint ok, strong
    found = []
    while True:
        # per-coordinate maximum and its multiplicity among the chosen members
        for i in range(n):
            top[i] = -1
            cnt[i] = 0
        for j in range(n):
            for i in range(n):
                v = gens[idx[j], i]
                if v > top[i]:
                    top[i] = v
                    cnt[i] = 1
                    owner[i] = j
                elif v == top[i]:
                    cnt[i] += 1
        for j in range(n):
            has[j] = 0
        for i in range(n):
            if cnt[i] == 1:
                has[owner[i]] = 1
        ok = True
        for j in range(n):
            if not has[j]:
                ok = False
                break
        if ok:
            for g in range(r):
                strong = True
                for i in range(n):
                    v = gens[g, i]
                    if v != 0 and v >= top[i]:
                        strong = False
                        break
                if strong:
                    ok = False
                    break
        if ok:
            found.append(tuple(idx[j] for j in range(n)))
        # next combination in lex order
        k = n - 1
        while k >= 0 and idx[k] == r - n + k:
            k -= 1
        if k < 0:
            break
        idx[k] += 1
        for j in range(k + 1, n):
            idx[j] = idx[j - 1] + 1
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    return np.array(found, dtype=np.int64)
