"""Time the compiled and numpy kernels on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run on both backends, results are checked for equality, and the
best-of-N wall time is printed with the speedup.
"""

import argparse
import timeit

import numpy as np

from monores import ModelParams, sample_ideal
from monores.kernels import implementations, subset_bitsets
from monores.linalg import CERT_PRIME


def rank_case(rng):
    m = rng.integers(-1, 2, size=(300, 260)).astype(np.int64)
    return (m % CERT_PRIME, CERT_PRIME)


def lattice_case():
    M = sample_ideal(ModelParams(4, 12, "0.02", 5))
    arr = np.ascontiguousarray(M.array, dtype=np.int64)
    vals = [np.unique(arr[:, i]) for i in range(M.n)]
    offsets = np.zeros(M.n + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(v) for v in vals])
    total = int(np.prod([len(v) for v in vals]))
    return (arr, np.concatenate(vals).astype(np.int64), offsets, 0, total,
            subset_bitsets(M.n))


def witness_case():
    M = sample_ideal(ModelParams(3, 40, "0.08", 11))
    return (np.ascontiguousarray(M.array, dtype=np.int64), M.n)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = implementations()
    if "cython" not in impls:
        print("compiled extension not built; timing the numpy backend only")
    cases = {"rank_mod_p": rank_case(np.random.default_rng(0)),
             "lattice_scan": lattice_case(),
             "witness_scan": witness_case()}
    print(f"{'kernel':<14}" + "".join(f"{name:>12}" for name in impls) + f"{'speedup':>10}")
    for kernel, inputs in cases.items():
        times, results = {}, {}
        for name, mod in impls.items():
            fn = getattr(mod, kernel)
            results[name] = fn(*inputs)
            times[name] = min(timeit.repeat(lambda: fn(*inputs), number=1, repeat=args.repeat))
        vals = list(results.values())
        assert all(same(vals[0], v) for v in vals[1:]), f"{kernel}: backends disagree"
        speed = (f"{times['python'] / times['cython']:>9.1f}x" if "cython" in times else "")
        print(f"{kernel:<14}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in impls) + speed)


if __name__ == "__main__":
    main()
