"""Centralized numerical tolerances and size caps.

All tolerances are absolute on the max-norm unless the name says otherwise.
"""
from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # LU pivot below this times the max row norm aborts inversion
    singular_pivot: float = 1e-12
    hermitian: float = 1e-10
    unitarity: float = 1e-10
    # hafnian inputs with larger asymmetry are rejected instead of symmetrized
    symmetry: float = 1e-10
    imag_residue: float = 1e-10
    # switch to log-space when |sigma_Q|^(-1/2) drops below this
    prefactor_underflow: float = 1e-300
    table_normalization: float = 1e-6


@dataclass(frozen=True)
class Limits:
    hafnian_dim: int = 16
    hafnian_dim_hard: int = 20
    permanent_dim: int = 24


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_LIMITS = Limits()

#: Set to a truthy value to bypass numba and run the pure-numpy kernels.
DISABLE_NUMBA_ENV = "GBSIM_DISABLE_NUMBA"


def numba_disabled() -> bool:
    return os.environ.get(DISABLE_NUMBA_ENV, "").strip().lower() in {"1", "true", "yes", "on"}
