"""Dense complex-matrix helpers built on the LU kernels.

Matrices are plain ``complex128`` numpy arrays. ``as_matrix`` is the single
entry point that validates shape and finiteness.
"""
from __future__ import annotations

import numpy as np

from . import _kernels
from .config import DEFAULT_TOLERANCES
from .errors import DimensionError, SingularMatrixError


def as_matrix(m, square: bool = False) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex128 array.

    The result may share memory with ``m``; do not mutate it.
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return np.ascontiguousarray(arr)


def lu(m):
    """Partial-pivoting LU factorization of a square matrix.

    Returns
    -------
    lu : ndarray
        Packed factors: unit-lower ``L`` strictly below the diagonal, ``U``
        on and above it.
    perm : ndarray of int
        Row permutation, ``m[perm] = L @ U``.
    sign : float
        Parity of ``perm`` (+1 or -1).
    """
    a = as_matrix(m, square=True)
    return _kernels.lu_factor(a)


def determinant(m) -> complex:
    """Determinant via LU with partial pivoting; the 0x0 determinant is 1."""
    a = as_matrix(m, square=True)
    if a.shape[0] == 0:
        return 1.0 + 0.0j
    factors, _, sign = _kernels.lu_factor(a)
    return complex(sign * np.prod(np.diag(factors)))


def log_abs_determinant(m) -> float:
    """``log|det m|`` summed over pivots, for determinants outside double range."""
    a = as_matrix(m, square=True)
    if a.shape[0] == 0:
        return 0.0
    factors, _, _ = _kernels.lu_factor(a)
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(np.abs(np.diag(factors)))))


def inverse(m, tol: float = DEFAULT_TOLERANCES.singular_pivot) -> np.ndarray:
    """Inverse through LU.

    Raises
    ------
    SingularMatrixError
        If any pivot has magnitude below ``tol`` times the largest absolute
        row sum of ``m``. The offending pivot magnitude is on ``.pivot``.
    """
    a = as_matrix(m, square=True)
    n = a.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    factors, perm, _ = _kernels.lu_factor(a)
    pivots = np.abs(np.diag(factors))
    scale = np.max(np.sum(np.abs(a), axis=1))
    smallest = float(pivots.min())
    if scale == 0 or smallest < tol * scale:
        raise SingularMatrixError(
            f"matrix is singular to working precision (pivot {smallest:.3e}, row norm {scale:.3e})",
            pivot=smallest,
        )
    return _kernels.lu_solve(factors, perm, np.eye(n, dtype=np.complex128))


def is_hermitian_positive_definite(m, tol: float = DEFAULT_TOLERANCES.hermitian) -> bool:
    """True iff ``m`` is Hermitian within ``tol`` and its Hermitian part has a
    Cholesky factorization whose pivots all exceed ``tol``."""
    a = as_matrix(m, square=True)
    if a.shape[0] and np.max(np.abs(a - a.conj().T)) > tol:
        return False
    h = 0.5 * (a + a.conj().T)
    n = h.shape[0]
    low = np.zeros_like(h)
    for j in range(n):
        d = h[j, j].real - np.sum(np.abs(low[j, :j]) ** 2)
        if not d > tol:
            return False
        low[j, j] = np.sqrt(d)
        low[j + 1:, j] = (h[j + 1:, j] - low[j + 1:, :j] @ low[j, :j].conj()) / low[j, j]
    return True


def submatrix_by_multiset(m, row_indices, col_indices) -> np.ndarray:
    """Select rows and columns by index lists that may contain repeats.

    Entry ``(i, j)`` of the result is ``m[row_indices[i], col_indices[j]]``;
    index order is preserved as given. Repeating an index ``k`` times is how a
    mode holding ``k`` photons enters the hafnian.

    >>> submatrix_by_multiset([[1, 2], [3, 4]], [0, 0], [1, 1]).real
    array([[2., 2.],
           [2., 2.]])
    """
    a = as_matrix(m)
    rows = np.asarray(row_indices, dtype=np.int64).reshape(-1)
    cols = np.asarray(col_indices, dtype=np.int64).reshape(-1)
    for name, idx, dim in (("row", rows, a.shape[0]), ("column", cols, a.shape[1])):
        if idx.size and (idx.min() < 0 or idx.max() >= dim):
            raise IndexError(f"{name} index out of range for dimension {dim}: {idx.tolist()}")
    return a[np.ix_(rows, cols)]


def direct_sum(*blocks) -> np.ndarray:
    """Block-diagonal matrix from the given blocks."""
    mats = [as_matrix(b) for b in blocks]
    rows = sum(b.shape[0] for b in mats)
    cols = sum(b.shape[1] for b in mats)
    out = np.zeros((rows, cols), dtype=np.complex128)
    r = c = 0
    for b in mats:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
