"""Kernel selection: compiled extension when importable, numpy fallback otherwise.

Set ``MONORES_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("MONORES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

rank_mod_p = _impl.rank_mod_p
lattice_scan = _impl.lattice_scan
witness_scan = _impl.witness_scan
subset_bitsets = _pykernels.subset_bitsets


def implementations():
    """Both backends by name, for benchmarks and cross-checks."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
