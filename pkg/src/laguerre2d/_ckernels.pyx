# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels; mirrors ``laguerre2d._pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def hermite_table(x, Py_ssize_t nmax, bint normalized=False):
    cdef double complex xc = complex(x)
    out = np.empty(nmax + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t k
    o[0] = 1.0
    if nmax == 0:
        return out
    if normalized:
        o[1] = sqrt(2.0) * xc
        for k in range(1, nmax):
            o[k + 1] = sqrt(2.0 / (k + 1)) * xc * o[k] - sqrt(k / (k + 1.0)) * o[k - 1]
    else:
        o[1] = 2.0 * xc
        for k in range(1, nmax):
            o[k + 1] = 2.0 * xc * o[k] - 2.0 * k * o[k - 1]
    return out


def hermite_points(Py_ssize_t n, xs, bint normalized=False):
    arr = np.asarray(xs, dtype=np.complex128)
    flat = np.array(arr, dtype=np.complex128).ravel()
    cdef double complex[::1] xv = flat
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i, k, npts = flat.shape[0]
    cdef double complex prev, cur, nxt, x
    for i in range(npts):
        x = xv[i]
        prev = 0.0
        cur = 1.0
        for k in range(n):
            if normalized:
                nxt = sqrt(2.0 / (k + 1)) * x * cur - sqrt(k / (k + 1.0)) * prev
            else:
                nxt = 2.0 * x * cur - 2.0 * k * prev
            prev = cur
            cur = nxt
        o[i] = cur
    return out.reshape(arr.shape)


cdef void _fill_diagonals(double complex[:, ::1] o, double complex z, double complex zp,
                          double complex c, bint normalized) noexcept:
    cdef Py_ssize_t mmax = o.shape[0] - 1, nmax = o.shape[1] - 1
    cdef Py_ssize_t d, a, k, m, n, steps
    cdef double complex u = z * zp, base, cur, prev, nxt
    for d in range(-nmax, mmax + 1):
        a = d if d >= 0 else -d
        base = z if d >= 0 else zp
        cur = 1.0
        for k in range(a):
            if normalized:
                cur = cur * base / sqrt(k + 1.0)
            else:
                cur = cur * base
        prev = 0.0
        steps = min(mmax - d, nmax) if d >= 0 else min(nmax + d, mmax)
        for k in range(steps + 1):
            if d >= 0:
                m = a + k
                n = k
            else:
                m = k
                n = a + k
            o[m, n] = cur
            if k == steps:
                break
            if normalized:
                nxt = ((u - c * (a + 2 * k + 1)) * cur - c * c * sqrt(<double>((a + k) * k)) * prev) \
                    / sqrt(<double>((a + k + 1) * (k + 1)))
            else:
                nxt = (u - c * (a + 2 * k + 1)) * cur - c * c * <double>((a + k) * k) * prev
            prev = cur
            cur = nxt


def laguerre2d_table(z, zp, Py_ssize_t mmax, Py_ssize_t nmax, c=1.0, bint normalized=False):
    out = np.empty((mmax + 1, nmax + 1), dtype=np.complex128)
    _fill_diagonals(out, complex(z), complex(zp), complex(c), normalized)
    return out


def laguerre2d_points_table(zs, zps, Py_ssize_t mmax, Py_ssize_t nmax, bint normalized=False):
    arr = np.asarray(zs, dtype=np.complex128)
    shape = arr.shape
    flat = np.array(arr, dtype=np.complex128).ravel()
    flatp = np.array(np.broadcast_to(np.asarray(zps, dtype=np.complex128), shape),
                     dtype=np.complex128).ravel()
    cdef double complex[::1] zv = flat
    cdef double complex[::1] zpv = flatp
    cdef Py_ssize_t npts = flat.shape[0]
    out = np.empty((npts, mmax + 1, nmax + 1), dtype=np.complex128)
    cdef double complex[:, :, ::1] o = out
    cdef Py_ssize_t i
    for i in range(npts):
        _fill_diagonals(o[i], zv[i], zpv[i], 1.0, normalized)
    return out.reshape(shape + (mmax + 1, nmax + 1))


def laguerre2d_points(Py_ssize_t m, Py_ssize_t n, zs, zps, bint normalized=False):
    arr = np.asarray(zs, dtype=np.complex128)
    shape = arr.shape
    flat = np.array(arr, dtype=np.complex128).ravel()
    flatp = np.array(np.broadcast_to(np.asarray(zps, dtype=np.complex128), shape),
                     dtype=np.complex128).ravel()
    if m < n:
        m, n = n, m
        flat, flatp = flatp, flat
    cdef double complex[::1] zv = flat
    cdef double complex[::1] zpv = flatp
    cdef Py_ssize_t npts = flat.shape[0]
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i, k, d = m - n
    cdef double complex z, u, prev, cur, nxt
    # diagonal recurrence along (d+k, k); depends on z z' only
    for i in range(npts):
        z = zv[i]
        u = z * zpv[i]
        cur = 1.0
        for k in range(d):
            if normalized:
                cur = cur * z / sqrt(k + 1.0)
            else:
                cur = cur * z
        prev = 0.0
        for k in range(n):
            if normalized:
                nxt = ((u - (d + 2 * k + 1)) * cur - sqrt(<double>((d + k) * k)) * prev) \
                    / sqrt(<double>((d + k + 1) * (k + 1)))
            else:
                nxt = (u - (d + 2 * k + 1)) * cur - <double>((d + k) * k) * prev
            prev = cur
            cur = nxt
        o[i] = cur
    return out.reshape(shape)
