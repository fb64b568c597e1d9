"""Kernel backend selection.

ZSMILES_KERNELS=numba|numpy picks the implementation; unset prefers the
JIT backend and falls back to numpy (with a RuntimeWarning) when numba is
missing. Both backends expose identical functions over identical layouts.
"""

import os
import warnings


def _select():
    choice = os.environ.get("ZSMILES_KERNELS", "").strip().lower()
    if choice not in ("", "numba", "numpy"):
        raise ValueError(f"ZSMILES_KERNELS={choice!r}: expected 'numba' or 'numpy'")
    if choice != "numpy":
        try:
            from . import numba_impl
            return numba_impl, "numba"
        except ImportError:
            if choice == "numba":
                raise
            warnings.warn("numba unavailable, using numpy kernels", RuntimeWarning)
    from . import numpy_impl
    return numpy_impl, "numpy"


_impl, BACKEND = _select()

compress_batch = _impl.compress_batch
decompress_sizes = _impl.decompress_sizes
decompress_fill = _impl.decompress_fill
overlap_batch = _impl.overlap_batch
