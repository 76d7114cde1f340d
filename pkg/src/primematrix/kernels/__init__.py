"""Primality and progression-scan kernels.

Two interchangeable backends: a Cython extension (``_fast``) and a pure
Python fallback (``_pure``).  The compiled one is picked when it imports
cleanly; set PRIMEMATRIX_PURE=1 to force the fallback, e.g. to compare
the two in benchmarks or to debug without a C toolchain.
"""

import os

if os.environ.get("PRIMEMATRIX_PURE"):
    from primematrix.kernels import _pure as _backend
else:
    try:
        from primematrix.kernels import _fast as _backend  # type: ignore[attr-defined]
    except ImportError:
        from primematrix.kernels import _pure as _backend

backend_name = _backend.backend_name
is_prime_u64 = _backend.is_prime_u64
twin_lowers_in_range = _backend.twin_lowers_in_range
count_twin_lowers = _backend.count_twin_lowers
prime_columns = _backend.prime_columns
count_prime_columns = _backend.count_prime_columns
twin_columns = _backend.twin_columns
count_twin_columns = _backend.count_twin_columns
first_twin_column = _backend.first_twin_column


def get_backend(name=None):
    """Return a kernel module by name ("pure", "cython") or the active one."""
    if name is None:
        return _backend
    if name == "pure":
        from primematrix.kernels import _pure
        return _pure
    if name == "cython":
        from primematrix.kernels import _fast  # raises ImportError if not built
        return _fast
    raise ValueError(f"unknown backend {name!r}")


__all__ = [
    "backend_name",
    "get_backend",
    "is_prime_u64",
    "twin_lowers_in_range",
    "count_twin_lowers",
    "prime_columns",
    "count_prime_columns",
    "twin_columns",
    "count_twin_columns",
    "first_twin_column",
]
