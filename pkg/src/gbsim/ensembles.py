"""Seeded Haar unitaries and COE matrices.

Random streams are fully determined by a 64-bit seed so other implementations
can reproduce them:

1. Raw 64-bit words come from Philox4x64-10 keyed with ``(seed, 0)`` and a zero
   starting counter (numpy's ``Philox(key=seed)``).
2. Each word ``w`` becomes a uniform double ``(w >> 11) * 2**-53`` in [0, 1).
3. Normal variates use the Marsaglia polar method on consecutive uniform
   pairs ``(u1, u2)``: ``x = 2 u1 - 1``, ``y = 2 u2 - 1``, ``s = x^2 + y^2``;
   pairs with ``s == 0`` or ``s >= 1`` are discarded, otherwise both
   ``x f`` and ``y f`` with ``f = sqrt(-2 ln s / s)`` are emitted, in that order.
4. A standard complex normal is ``(z_re + 1j z_im) / sqrt(2)`` from two
   consecutive normals; matrices are filled row-major.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .state import InterferometerUnitary

_MASK64 = (1 << 64) - 1


def _bit_generator(seed: int) -> np.random.Philox:
    return np.random.Philox(key=int(seed) & _MASK64)


class UniformStream:
    """Sequential uniform doubles in [0, 1) from a seeded Philox stream."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = _bit_generator(seed)

    def uniforms(self, n: int) -> np.ndarray:
        raw = self._bits.random_raw(int(n))
        return (np.asarray(raw, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normals(self, n: int) -> np.ndarray:
        out = np.empty(0)
        while out.size < n:
            # acceptance rate is pi/4, over-draw slightly to usually finish in one pass
            need = n - out.size
            pairs = self.uniforms(2 * (need // 2 + 1) + 8).reshape(-1, 2)
            x, y = 2.0 * pairs[:, 0] - 1.0, 2.0 * pairs[:, 1] - 1.0
            s = x * x + y * y
            ok = (s > 0) & (s < 1)
            f = np.sqrt(-2.0 * np.log(s[ok]) / s[ok])
            out = np.concatenate([out, np.column_stack([x[ok] * f, y[ok] * f]).reshape(-1)])
        return out[:n]

    def complex_normals(self, n: int) -> np.ndarray:
        z = self.normals(2 * n).reshape(-1, 2)
        return (z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)


def ginibre(modes: int, seed: int) -> np.ndarray:
    if modes < 1:
        raise DimensionError("need at least one mode")
    return UniformStream(seed).complex_normals(modes * modes).reshape(modes, modes)


def haar_unitary(modes: int, seed: int) -> InterferometerUnitary:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    diagonal of R rotated to be positive real."""
    z = ginibre(modes, seed)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return InterferometerUnitary(q)


def coe_matrix(modes: int, seed: int) -> np.ndarray:
    """Symmetric unitary ``T T^T`` from the circular orthogonal ensemble."""
    t = haar_unitary(modes, seed).t
    c = t @ t.T
    return 0.5 * (c + c.T)
