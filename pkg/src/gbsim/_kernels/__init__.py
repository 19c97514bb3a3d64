"""Kernel dispatch.

The numba kernels are used when numba imports and ``GBSIM_DISABLE_NUMBA`` is
unset; otherwise the pure-numpy kernels are used. Both modules stay importable
so tests and benchmarks can compare them directly.
"""
from __future__ import annotations

from ..config import numba_disabled
from . import _numpy as numpy_backend

try:
    if numba_disabled():
        raise ImportError("numba disabled by environment")
    from . import _numba as numba_backend
except ImportError:
    numba_backend = None

backend = numba_backend if numba_backend is not None else numpy_backend
BACKEND_NAME = "numba" if numba_backend is not None else "numpy"

lu_factor = backend.lu_factor
lu_solve = backend.lu_solve
hafnian_pmp = backend.hafnian_pmp
hafnian_recursive = backend.hafnian_recursive
permanent_ryser = backend.permanent_ryser
