# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled jet kernels.

Drop-in replacement for _jetpure: same function names, same array
conventions (C-contiguous float64, shape (order+1, batch), derivative
values along axis 0). Kept intentionally loop-based so the two backends
can be diffed side by side.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos as ccos
from libc.math cimport cosh as ccosh
from libc.math cimport exp as cexp
from libc.math cimport log as clog
from libc.math cimport pow as cpow
from libc.math cimport sin as csin
from libc.math cimport sinh as csinh
from libc.math cimport sqrt as csqrt

cnp.import_array()

MAX_ORDER = 16

cdef double[17][17] _BINOM
cdef double[17] _FACT


cdef void _init_tables() noexcept:
    cdef int n, k
    for n in range(17):
        _FACT[n] = 1.0
        for k in range(1, n + 1):
            _FACT[n] *= k
        for k in range(17):
            _BINOM[n][k] = 0.0
        _BINOM[n][0] = 1.0
        for k in range(1, n + 1):
            _BINOM[n][k] = _BINOM[n][k - 1] * (n - k + 1) / k

_init_tables()


def mul(double[:, ::1] a, double[:, ::1] b):
    cdef int n1 = a.shape[0], nb = a.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef int i, k, j
    cdef double acc
    for j in range(nb):
        for i in range(n1):
            acc = a[0, j] * b[i, j]
            for k in range(1, i + 1):
                acc += _BINOM[i][k] * a[k, j] * b[i - k, j]
            out[i, j] = acc
    return out_arr


def div(double[:, ::1] a, double[:, ::1] b):
    cdef int n1 = a.shape[0], nb = a.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    cdef int i, k, j
    for j in range(nb):
        if b[0, j] == 0.0:
            raise ZeroDivisionError("jet division by a jet with zero value")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef double acc, inv
    for j in range(nb):
        inv = 1.0 / b[0, j]
        out[0, j] = a[0, j] * inv
        for i in range(1, n1):
            acc = a[i, j]
            for k in range(i):
                acc -= _BINOM[i][k] * out[k, j] * b[i - k, j]
            out[i, j] = acc * inv
    return out_arr


def jexp(double[:, ::1] u):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef int n, k, j
    cdef double acc
    for j in range(nb):
        out[0, j] = cexp(u[0, j])
        for n in range(n1 - 1):
            acc = u[1, j] * out[n, j]
            for k in range(1, n + 1):
                acc += _BINOM[n][k] * u[k + 1, j] * out[n - k, j]
            out[n + 1, j] = acc
    return out_arr


def jlog(double[:, ::1] u):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    cdef int n, k, j
    for j in range(nb):
        if u[0, j] <= 0.0:
            raise ValueError("log of a jet with nonpositive value")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef double acc, inv
    # out[1:] is u'/u to order n1-2, computed by the division recurrence.
    for j in range(nb):
        out[0, j] = clog(u[0, j])
        inv = 1.0 / u[0, j]
        for n in range(1, n1):
            acc = u[n, j]
            for k in range(1, n):
                acc -= _BINOM[n - 1][k - 1] * out[k, j] * u[n - k, j]
            out[n, j] = acc * inv
    return out_arr


def jsqrt(double[:, ::1] u):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    cdef int n, k, j
    for j in range(nb):
        if u[0, j] <= 0.0:
            raise ValueError("sqrt of a jet with nonpositive value")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef double acc, half_inv
    for j in range(nb):
        out[0, j] = csqrt(u[0, j])
        half_inv = 0.5 / out[0, j]
        for n in range(1, n1):
            acc = u[n, j]
            for k in range(1, n):
                acc -= _BINOM[n][k] * out[k, j] * out[n - k, j]
            out[n, j] = acc * half_inv
    return out_arr


def sincos(double[:, ::1] u):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    s_arr = np.empty((n1, nb))
    c_arr = np.empty((n1, nb))
    cdef double[:, ::1] s = s_arr
    cdef double[:, ::1] c = c_arr
    cdef int n, k, j
    cdef double sa, ca
    for j in range(nb):
        s[0, j] = csin(u[0, j])
        c[0, j] = ccos(u[0, j])
        for n in range(n1 - 1):
            sa = u[1, j] * c[n, j]
            ca = u[1, j] * s[n, j]
            for k in range(1, n + 1):
                sa += _BINOM[n][k] * u[k + 1, j] * c[n - k, j]
                ca += _BINOM[n][k] * u[k + 1, j] * s[n - k, j]
            s[n + 1, j] = sa
            c[n + 1, j] = -ca
    return s_arr, c_arr


def sinhcosh(double[:, ::1] u):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    sh_arr = np.empty((n1, nb))
    ch_arr = np.empty((n1, nb))
    cdef double[:, ::1] sh = sh_arr
    cdef double[:, ::1] ch = ch_arr
    cdef int n, k, j
    cdef double sa, ca
    for j in range(nb):
        sh[0, j] = csinh(u[0, j])
        ch[0, j] = ccosh(u[0, j])
        for n in range(n1 - 1):
            sa = u[1, j] * ch[n, j]
            ca = u[1, j] * sh[n, j]
            for k in range(1, n + 1):
                sa += _BINOM[n][k] * u[k + 1, j] * ch[n - k, j]
                ca += _BINOM[n][k] * u[k + 1, j] * sh[n - k, j]
            sh[n + 1, j] = sa
            ch[n + 1, j] = ca
    return sh_arr, ch_arr


def pow_real(double[:, ::1] u, double p):
    cdef int n1 = u.shape[0], nb = u.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    cdef int n, k, j
    for j in range(nb):
        if u[0, j] <= 0.0:
            raise ValueError("real power of a jet with nonpositive value")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef double acc, inv
    for j in range(nb):
        out[0, j] = cpow(u[0, j], p)
        inv = 1.0 / u[0, j]
        for n in range(n1 - 1):
            acc = p * u[1, j] * out[n, j]
            for k in range(1, n + 1):
                acc += _BINOM[n][k] * (p * u[k + 1, j] * out[n - k, j]
                                       - u[k, j] * out[n + 1 - k, j])
            out[n + 1, j] = acc * inv
    return out_arr


def compose(double[:, ::1] g, double[:, ::1] u):
    cdef int n1 = g.shape[0], nb = g.shape[1]
    if n1 > 17:
        raise ValueError("jet order exceeds MAX_ORDER=16")
    out_arr = np.empty((n1, nb))
    cdef double[:, ::1] out = out_arr
    cdef double[17] gt
    cdef double[17] du
    cdef double[17] r
    cdef double[17] tmp
    cdef int i, k, j, m
    cdef double acc
    for j in range(nb):
        for i in range(n1):
            gt[i] = g[i, j] / _FACT[i]
            du[i] = u[i, j] / _FACT[i]
        du[0] = 0.0
        for i in range(n1):
            r[i] = 0.0
        r[0] = gt[n1 - 1]
        for k in range(n1 - 2, -1, -1):
            for i in range(n1):
                acc = 0.0
                for m in range(i + 1):
                    acc += r[m] * du[i - m]
                tmp[i] = acc
            for i in range(n1):
                r[i] = tmp[i]
            r[0] += gt[k]
        for i in range(n1):
            out[i, j] = r[i] * _FACT[i]
    return out_arr
