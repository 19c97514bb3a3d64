"""Exact hafnians and permanents.

Two independent hafnian algorithms are provided so each can check the other:

* ``hafnian_pmp`` enumerates every perfect matching and sums the products of
  matched entries, pairing the lowest unmatched index first.
* ``hafnian_recursive`` expands along the first row,
  ``Haf(A) = sum_j A[0, j] Haf(A without rows/cols 0 and j)``.

``permanent_ryser`` is the inclusion-exclusion permanent, and
``hafnian_via_permanent_embedding`` evaluates a permanent as the hafnian of
the bipartite block matrix ``[[0, G], [G^T, 0]]``.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .config import DEFAULT_LIMITS, DEFAULT_TOLERANCES
from .errors import DimensionError, ResourceError
from .linalg import as_matrix


def _prepare_symmetric(a, max_dim, tol):
    m = as_matrix(a, square=True)
    n = m.shape[0]
    cap = DEFAULT_LIMITS.hafnian_dim if max_dim is None else int(max_dim)
    if cap > DEFAULT_LIMITS.hafnian_dim_hard:
        raise ValueError(f"hafnian cap {cap} exceeds the hard limit {DEFAULT_LIMITS.hafnian_dim_hard}")
    if n > cap:
        raise ResourceError(f"hafnian of a {n}x{n} matrix exceeds the dimension cap {cap}")
    if n == 0:
        return m
    asym = float(np.max(np.abs(m - m.T)))
    if asym > tol:
        raise ValueError(f"hafnian input is not symmetric (max |a - a^T| = {asym:.3e})")
    if asym > 0:
        m = 0.5 * (m + m.T)
    return np.ascontiguousarray(m)


def hafnian_pmp(a, max_dim: int | None = None, tol: float = DEFAULT_TOLERANCES.symmetry) -> complex:
    """Hafnian by direct enumeration of all ``(2n-1)!!`` perfect matchings.

    Parameters
    ----------
    a : array_like
        Square symmetric matrix. Asymmetry up to ``tol`` is symmetrized away;
        anything larger raises ``ValueError``.
    max_dim : int, optional
        Dimension cap (default 16, never above 20). Exceeding it raises
        ``ResourceError``.

    Returns
    -------
    complex
        The hafnian. Odd dimensions return 0 and the 0x0 hafnian is 1.
    """
    m = _prepare_symmetric(a, max_dim, tol)
    if m.shape[0] % 2:
        return 0.0 + 0.0j
    return complex(_kernels.hafnian_pmp(m))


def hafnian_recursive(a, max_dim: int | None = None, tol: float = DEFAULT_TOLERANCES.symmetry) -> complex:
    """Hafnian by first-row expansion. Same conventions as :func:`hafnian_pmp`."""
    m = _prepare_symmetric(a, max_dim, tol)
    if m.shape[0] % 2:
        return 0.0 + 0.0j
    return complex(_kernels.hafnian_recursive(m))


def permanent_ryser(g) -> complex:
    """Permanent by Ryser's inclusion-exclusion formula, O(2^n n)."""
    m = as_matrix(g, square=True)
    if m.shape[0] > DEFAULT_LIMITS.permanent_dim:
        raise ResourceError(f"permanent of a {m.shape[0]}x{m.shape[0]} matrix exceeds the cap")
    return complex(_kernels.permanent_ryser(m))


def bipartite_embedding(g) -> np.ndarray:
    """The symmetric ``2n x 2n`` matrix ``[[0, G], [G^T, 0]]``."""
    m = as_matrix(g, square=True)
    n = m.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=np.complex128)
    out[:n, n:] = m
    out[n:, :n] = m.T
    return out


def hafnian_via_permanent_embedding(g, max_dim: int | None = None) -> complex:
    """``Perm(G)`` computed as the hafnian of its bipartite embedding."""
    return hafnian_pmp(bipartite_embedding(g), max_dim=max_dim)


def hafnian(a, max_dim: int | None = None) -> complex:
    """Default hafnian used by the probability code (matching enumeration)."""
    return hafnian_pmp(a, max_dim=max_dim)
