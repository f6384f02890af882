"""Pure-numpy recurrence kernels.

Reference implementation of the table builders used by the series and
quadrature code. ``_ckernels`` (Cython) exposes the same functions with the
same signatures; ``laguerre2d._backend`` picks one at import time.
"""

import math

import numpy as np


def _product(a, b):
    # numpy's vectorized complex multiply may fuse operations, so a*b and b*a
    # can differ in the last bit; spelled out it is symmetric like the scalar one
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    re = a.real * b.real - a.imag * b.imag
    im = a.real * b.imag + a.imag * b.real
    out = np.empty(re.shape, dtype=np.complex128)
    out.real, out.imag = re, im
    return out


def hermite_table(x, nmax, normalized=False):
    """H_0(x) .. H_nmax(x) by the three-term recurrence.

    With ``normalized`` the entries are H_k(x) / sqrt(2^k k!).
    """
    x = complex(x)
    out = np.empty(nmax + 1, dtype=np.complex128)
    out[0] = 1.0
    if nmax == 0:
        return out
    if normalized:
        out[1] = np.sqrt(2.0) * x
        for k in range(1, nmax):
            out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1.0)) * out[k - 1]
    else:
        out[1] = 2.0 * x
        for k in range(1, nmax):
            out[k + 1] = 2.0 * x * out[k] - 2.0 * k * out[k - 1]
    return out


def hermite_points(n, xs, normalized=False):
    """H_n at every entry of ``xs`` (any shape)."""
    xs = np.asarray(xs, dtype=np.complex128)
    prev = np.zeros_like(xs)
    cur = np.ones_like(xs)
    for k in range(n):
        if normalized:
            nxt = np.sqrt(2.0 / (k + 1)) * xs * cur - np.sqrt(k / (k + 1.0)) * prev
        else:
            nxt = 2.0 * xs * cur - 2.0 * k * prev
        prev, cur = cur, nxt
    return cur


def _fill_diagonals(out, zs, zps, c, normalized):
    """Fill out[..., m, n] along each diagonal m - n = d.

    Each diagonal starts from z^d (or zp^-d) and follows
    L_{m+1,n+1} = (z zp - c (m+n+1)) L_{m,n} - c^2 m n L_{m-1,n-1},
    which only sees the product z zp and stays accurate where the
    raising recurrences cancel.
    """
    mmax, nmax = out.shape[-2] - 1, out.shape[-1] - 1
    u = _product(zs, zps)
    for d in range(-nmax, mmax + 1):
        a = abs(d)
        base = zs if d >= 0 else zps
        cur = np.ones_like(u)
        for k in range(a):
            cur = cur * base / math.sqrt(k + 1.0) if normalized else cur * base
        prev = np.zeros_like(cur)
        steps = min(mmax - d, nmax) if d >= 0 else min(nmax + d, mmax)
        for k in range(steps + 1):
            m, n = (a + k, k) if d >= 0 else (k, a + k)
            out[..., m, n] = cur
            if k == steps:
                break
            if normalized:
                nxt = ((u - c * (a + 2 * k + 1)) * cur - c * c * math.sqrt((a + k) * k) * prev) \
                    / math.sqrt((a + k + 1) * (k + 1))
            else:
                nxt = (u - c * (a + 2 * k + 1)) * cur - c * c * ((a + k) * k) * prev
            prev, cur = cur, nxt
    return out


def laguerre2d_table(z, zp, mmax, nmax, c=1.0, normalized=False):
    """Table T[m, n] = L_{m,n}(z, zp) for m <= mmax, n <= nmax.

    ``c`` other than 1 gives the homogenized polynomial
    c^{(m+n)/2} L_{m,n}(z/sqrt(c), zp/sqrt(c)); c = 0 yields z^m zp^n.
    With ``normalized`` entries are divided by sqrt(m! n!).
    """
    out = np.empty((mmax + 1, nmax + 1), dtype=np.complex128)
    return _fill_diagonals(out, np.complex128(z), np.complex128(zp), complex(c), normalized)


def laguerre2d_points_table(zs, zps, mmax, nmax, normalized=False):
    """Tables for many points at once; result has shape zs.shape + (mmax+1, nmax+1)."""
    zs = np.asarray(zs, dtype=np.complex128)
    zps = np.broadcast_to(np.asarray(zps, dtype=np.complex128), zs.shape)
    out = np.empty(zs.shape + (mmax + 1, nmax + 1), dtype=np.complex128)
    return _fill_diagonals(out, zs, zps, 1.0, normalized)


def laguerre2d_points(m, n, zs, zps, normalized=False):
    """L_{m,n} at every (zs[i], zps[i]) by the diagonal three-term recurrence.

    Walking (d+k, k) with d = |m-n| only involves u = z z', which keeps the
    oscillatory region (z' = conj(z), large |z|) free of cancellation.
    """
    zs = np.asarray(zs, dtype=np.complex128)
    zps = np.broadcast_to(np.asarray(zps, dtype=np.complex128), zs.shape)
    if m < n:
        m, n, zs, zps = n, m, zps, zs
    d = m - n
    u = _product(zs, zps)
    cur = np.ones_like(u)
    for k in range(d):
        cur = cur * zs / math.sqrt(k + 1.0) if normalized else cur * zs
    prev = np.zeros_like(cur)
    for k in range(n):
        if normalized:
            nxt = ((u - (d + 2 * k + 1)) * cur - math.sqrt((d + k) * k) * prev) \
                / math.sqrt((d + k + 1) * (k + 1))
        else:
            nxt = (u - (d + 2 * k + 1)) * cur - (d + k) * k * prev
        prev, cur = cur, nxt
    return cur
