"""numba-compiled kernels. Same contracts as ``_numpy``."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def lu_factor(a):
    lu = a.copy()
    n = lu.shape[0]
    perm = np.arange(n)
    sign = 1.0
    for k in range(n):
        p = k
        best = abs(lu[k, k])
        for i in range(k + 1, n):
            v = abs(lu[i, k])
            if v > best:
                best = v
                p = i
        if p != k:
            for j in range(n):
                tmp = lu[k, j]
                lu[k, j] = lu[p, j]
                lu[p, j] = tmp
            t = perm[k]
            perm[k] = perm[p]
            perm[p] = t
            sign = -sign
        pivot = lu[k, k]
        if pivot == 0:
            continue
        for i in range(k + 1, n):
            f = lu[i, k] / pivot
            lu[i, k] = f
            for j in range(k + 1, n):
                lu[i, j] -= f * lu[k, j]
    return lu, perm, sign


@njit(cache=True)
def lu_solve(lu, perm, b):
    n = lu.shape[0]
    ncol = b.shape[1]
    x = np.empty((n, ncol), dtype=np.complex128)
    for i in range(n):
        for c in range(ncol):
            x[i, c] = b[perm[i], c]
    for c in range(ncol):
        for i in range(1, n):
            s = x[i, c]
            for j in range(i):
                s -= lu[i, j] * x[j, c]
            x[i, c] = s
        for i in range(n - 1, -1, -1):
            s = x[i, c]
            for j in range(i + 1, n):
                s -= lu[i, j] * x[j, c]
            x[i, c] = s / lu[i, i]
    return x


@njit(cache=True)
def hafnian_pmp(a):
    """Depth-first walk over perfect matchings, lowest unmatched index first."""
    n = a.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    m = n // 2
    used = np.zeros(n, dtype=np.bool_)
    first = np.empty(m, dtype=np.int64)
    cur = np.empty(m, dtype=np.int64)
    prod = np.empty(m + 1, dtype=np.complex128)
    prod[0] = 1.0
    total = 0.0 + 0.0j
    d = 0
    first[0] = 0
    cur[0] = 0
    used[0] = True
    while d >= 0:
        if cur[d] != first[d]:
            used[cur[d]] = False
        j = cur[d] + 1
        while j < n and used[j]:
            j += 1
        if j == n:
            used[first[d]] = False
            d -= 1
            continue
        cur[d] = j
        used[j] = True
        p = prod[d] * a[first[d], j]
        if d == m - 1:
            total += p
        else:
            d += 1
            prod[d] = p
            i = 0
            while used[i]:
                i += 1
            first[d] = i
            cur[d] = i
            used[i] = True
    return total


# self-recursive kernels crash when loaded from numba's on-disk cache
@njit
def _expand(a, buf, level, k):
    if k == 0:
        return 1.0 + 0.0j
    i = buf[level, 0]
    total = 0.0 + 0.0j
    for p in range(1, k):
        s = 0
        for q in range(1, k):
            if q != p:
                buf[level + 1, s] = buf[level, q]
                s += 1
        total += a[i, buf[level, p]] * _expand(a, buf, level + 1, k - 2)
    return total


@njit
def hafnian_recursive(a):
    """First-row expansion, Haf(a) = sum_j a[0, j] Haf(a without 0, j)."""
    n = a.shape[0]
    buf = np.empty((n // 2 + 1, max(n, 1)), dtype=np.int64)
    for i in range(n):
        buf[0, i] = i
    return _expand(a, buf, 0, n)


@njit(cache=True)
def permanent_ryser(g):
    """Ryser formula walked in Gray-code order, O(2^n n)."""
    n = g.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=np.complex128)
    in_set = np.zeros(n, dtype=np.bool_)
    total = 0.0 + 0.0j
    size = 0
    for k in range(1, 1 << n):
        j = 0
        while not (k >> j) & 1:
            j += 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for i in range(n):
                row_sums[i] -= g[i, j]
        else:
            in_set[j] = True
            size += 1
            for i in range(n):
                row_sums[i] += g[i, j]
        p = 1.0 + 0.0j
        for i in range(n):
            p *= row_sums[i]
        if (n - size) % 2 == 0:
            total += p
        else:
            total -= p
    return total
