"""Pure numpy/Python reference kernels.

These are used when numba is missing or disabled through the environment.
They must agree with the compiled kernels to floating-point tolerance; the
summation order is different, so results are not bit-identical across paths.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def lu_factor(a):
    """LU factorization with partial pivoting, ``P a = L U``.

    Returns ``(lu, perm, sign)``; ``lu`` packs unit-lower ``L`` below the
    diagonal and ``U`` on and above it.
    """
    lu = np.array(a, dtype=np.complex128, copy=True)
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0:
            continue
        lu[k + 1:, k] /= pivot
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, sign


def lu_solve(lu, perm, b):
    n = lu.shape[0]
    x = np.array(b, dtype=np.complex128)[perm]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def hafnian_pmp(a):
    """Sum over perfect matchings, expanded breadth-first.

    Each level pairs the lowest unmatched index of every partial matching with
    each remaining index, so level ``k`` holds ``(2n-1)(2n-3)...`` partial
    products and the last level holds all ``(2n-1)!!`` matchings.
    """
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    full = (1 << n) - 1
    masks = np.zeros(1, dtype=np.int64)
    prods = np.ones(1, dtype=np.complex128)
    for _ in range(n // 2):
        free = full & ~masks
        low = free & -free
        first = np.log2(low).astype(np.int64)
        new_masks, new_prods = [], []
        for j in range(n):
            ok = (first < j) & (((masks >> j) & 1) == 0)
            if not ok.any():
                continue
            sel = np.nonzero(ok)[0]
            new_masks.append(masks[sel] | low[sel] | (1 << j))
            new_prods.append(prods[sel] * a[first[sel], j])
        masks = np.concatenate(new_masks)
        prods = np.concatenate(new_prods)
    return complex(prods.sum())


def hafnian_recursive(a):
    """First-row expansion, memoized on the bitmask of remaining indices."""
    n = a.shape[0]
    rows = a.tolist()

    @lru_cache(maxsize=None)
    def haf(mask):
        if mask == 0:
            return 1.0 + 0.0j
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = 0.0 + 0.0j
        ai = rows[i]
        m = rest
        while m:
            bit = m & -m
            j = bit.bit_length() - 1
            total += ai[j] * haf(rest & ~bit)
            m &= ~bit
        return total

    return complex(haf((1 << n) - 1))


def permanent_ryser(g, chunk=1 << 14):
    """Ryser inclusion-exclusion, vectorized over blocks of column subsets."""
    n = g.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    bits = np.arange(n)
    gt = np.ascontiguousarray(g.T)
    for start in range(1, 1 << n, chunk):
        subsets = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        member = ((subsets[:, None] >> bits) & 1).astype(np.float64)
        row_sums = member @ gt
        signs = np.where((n - member.sum(axis=1)) % 2 == 0, 1.0, -1.0)
        total += np.sum(signs * np.prod(row_sums, axis=1))
    return complex(total)
