"""Kernel backend selection.

The hot path-tracking kernels are compiled with numba when it is available.
Setting ACSV_PURE_NUMPY=1 (or any value other than "" / "0") forces the pure
numpy/Python fallback, which runs the identical code uncompiled.  ACSV_THREADS
caps how many worker threads the solver may use (default 1).
"""

from __future__ import annotations

import functools
import os

PURE_NUMPY_ENV = "ACSV_PURE_NUMPY"
THREADS_ENV = "ACSV_THREADS"


def pure_numpy_requested() -> bool:
    return os.environ.get(PURE_NUMPY_ENV, "") not in ("", "0")


NUMBA_ENABLED = False
if not pure_numpy_requested():
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def jit(func):
    """numba.njit(cache=True, nogil=True) or identity, per backend."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True, nogil=True)(func)
    return func


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    cpus = os.cpu_count() or 1
    return max(1, min(n, cpus))
