"""Hot subset-sum kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imported and the inputs fit in int64
without overflow; otherwise the Python twin (arbitrary precision) runs.

``subset_margin_signs(levels)``
    ``levels`` is a list of integer rows (one per infinitesimal order).  For
    every bitmask ``J`` over ``n`` entries returns the sign of the
    lexicographic vector ``(2*sum_J - total)`` taken row by row.
``short_families(vectors)``
    ``vectors`` is an ``(N, n)`` integer array of ascending vectors.  Returns
    ``(flags, generic)`` where ``flags[r, A] = 1`` iff ``A + {n}`` is short
    for ``A`` a bitmask over the first ``n-1`` entries.
"""

from __future__ import annotations

import numpy as np

from . import _kernels_py as python_impl

try:  # pragma: no cover - depends on the build
    from . import _ckernels as compiled_impl
except ImportError:  # pragma: no cover
    compiled_impl = None

BACKEND = "cython" if compiled_impl is not None else "python"

# |2*sum| over at most 20 entries must stay below 2**63
_SAFE = 2**57


def _fits(rows) -> bool:
    return all(abs(int(x)) < _SAFE for row in rows for x in row)


def _impl(name: str | None):
    name = name or BACKEND
    if name == "cython":
        if compiled_impl is None:
            raise RuntimeError("compiled kernels are not available")
        return compiled_impl
    if name == "python":
        return python_impl
    raise ValueError(f"unknown backend {name!r}")


def subset_margin_signs(levels, backend: str | None = None) -> np.ndarray:
    impl = _impl(backend)
    if impl is compiled_impl and not _fits(levels):
        impl = python_impl
    return impl.subset_margin_signs(levels)


def short_families(vectors, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    impl = _impl(backend)
    if impl is compiled_impl:
        arr = np.asarray(vectors)
        if arr.dtype == object or (arr.size and int(np.abs(arr).max()) >= _SAFE):
            impl = python_impl
    return impl.short_families(vectors)
