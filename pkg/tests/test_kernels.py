"""Compiled and numpy kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from conftest import small_ideals
from monores import kernels
from monores.linalg import CERT_PRIME, QQ, CoefficientField, homology, rank_exact, rank_mod_p

IMPLS = kernels.implementations()


def test_backend_selected():
    assert kernels.BACKEND in IMPLS


@pytest.mark.skipif("cython" not in IMPLS, reason="extension not built")
def test_both_backends_available():
    assert set(IMPLS) == {"python", "cython"}


small_matrices = arrays(np.int64, st.tuples(st.integers(1, 7), st.integers(1, 7)),
                        elements=st.integers(-3, 3))


@given(small_matrices, st.sampled_from([2, 3, 32003, CERT_PRIME]))
def test_rank_mod_p_backends_agree(m, p):
    want = oracles.rank_mod([list(map(int, r)) for r in m], p)
    for impl in IMPLS.values():
        assert impl.rank_mod_p(m % p, p) == want


@given(small_matrices)
def test_rank_exact_matches_fractions(m):
    assert rank_exact(m) == oracles.rank(m.tolist())


def test_rank_exact_sees_torsion():
    # det 2: rank 2 over Q, rank 1 over GF(2)
    m = np.array([[1, 1], [1, -1]])
    assert rank_exact(m) == 2
    assert rank_mod_p(m, 2) == 1


def test_rational_certificate_falls_back():
    # a complex whose mod-p homology is spread over two degrees forces exact ranks
    d1 = np.array([[1, 1], [1, -1]])
    dims = {0: 2, 1: 2}
    assert homology(dims, {1: d1}, QQ) == {}
    assert homology(dims, {1: d1}, CoefficientField(2)) == {0: 1, 1: 1}


def test_field_validation():
    with pytest.raises(ValueError):
        CoefficientField(4)
    with pytest.raises(ValueError):
        CoefficientField(-1)


def _lattice_inputs(M):
    arr = np.ascontiguousarray(M.array, dtype=np.int64)
    vals = [np.unique(arr[:, i]) for i in range(M.n)]
    offsets = np.zeros(M.n + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(v) for v in vals])
    values = np.concatenate(vals).astype(np.int64)
    total = int(np.prod([len(v) for v in vals]))
    return arr, values, offsets, total, kernels.subset_bitsets(M.n)


@given(small_ideals(max_n=4, max_gens=7))
def test_lattice_scan_backends_agree(M):
    if M.r == 0:
        return
    arr, values, offsets, total, table = _lattice_inputs(M)
    results = [impl.lattice_scan(arr, values, offsets, 0, total, table) for impl in IMPLS.values()]
    for pts, keys in results[1:]:
        assert np.array_equal(pts, results[0][0])
        assert np.array_equal(keys, results[0][1])


@given(small_ideals(max_n=4, max_gens=7))
def test_lattice_scan_finds_lcm_lattice(M):
    if M.r == 0:
        return
    arr, values, offsets, total, table = _lattice_inputs(M)
    pts, _ = kernels.lattice_scan(arr, values, offsets, 0, total, table)
    got = {tuple(r) for r in pts.tolist()}
    from itertools import combinations
    want = {oracles.lcm([M.rows[i] for i in I])
            for k in range(1, M.r + 1) for I in combinations(range(M.r), k)}
    assert got == want


@given(small_ideals(max_n=4, max_gens=8))
def test_witness_scan_backends_agree(M):
    arr = np.ascontiguousarray(M.array, dtype=np.int64)
    results = [impl.witness_scan(arr, M.n) for impl in IMPLS.values()]
    for r in results[1:]:
        assert np.array_equal(r, results[0])
    want = oracles.witness_sets(M.rows, M.n)
    assert [tuple(x) for x in results[0].tolist()] == want


def test_subset_bitsets():
    table = kernels.subset_bitsets(2)
    # mask 0b11 has submasks {0, 1, 2, 3}
    assert int(table[3]) == 0b1111
    assert int(table[1]) == 0b11
