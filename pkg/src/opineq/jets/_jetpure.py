"""Pure-NumPy jet kernels (fallback backend).

Every kernel takes C-contiguous float64 arrays of shape (order+1, batch)
holding derivative values f(x), f'(x), ..., f^(order)(x) along axis 0 and
evaluation points along axis 1, and returns a fresh array of the same shape.
Semantics must stay in lockstep with the compiled backend in _jetcore.pyx;
the cross-backend tests enforce bit-level agreement on random inputs.
"""

import math

import numpy as np

MAX_ORDER = 16

_FACT = np.array([math.factorial(k) for k in range(MAX_ORDER + 1)], dtype=np.float64)
_BINOM = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1))
for _n in range(MAX_ORDER + 1):
    for _k in range(_n + 1):
        _BINOM[_n, _k] = math.comb(_n, _k)


def mul(a, b):
    n1 = a.shape[0]
    out = np.empty_like(a)
    for i in range(n1):
        acc = a[0] * b[i]
        for k in range(1, i + 1):
            acc = acc + _BINOM[i, k] * (a[k] * b[i - k])
        out[i] = acc
    return out


def div(a, b):
    if np.any(b[0] == 0.0):
        raise ZeroDivisionError("jet division by a jet with zero value")
    n1 = a.shape[0]
    out = np.empty_like(a)
    inv = 1.0 / b[0]
    out[0] = a[0] * inv
    for i in range(1, n1):
        acc = a[i].copy()
        for k in range(i):
            acc -= _BINOM[i, k] * (out[k] * b[i - k])
        out[i] = acc * inv
    return out


def jexp(u):
    n1 = u.shape[0]
    out = np.empty_like(u)
    out[0] = np.exp(u[0])
    for n in range(n1 - 1):
        acc = u[1] * out[n]
        for k in range(1, n + 1):
            acc = acc + _BINOM[n, k] * (u[k + 1] * out[n - k])
        out[n + 1] = acc
    return out


def jlog(u):
    if np.any(u[0] <= 0.0):
        raise ValueError("log of a jet with nonpositive value")
    n1 = u.shape[0]
    out = np.empty_like(u)
    out[0] = np.log(u[0])
    if n1 > 1:
        out[1:] = div(u[1:], u[: n1 - 1])
    return out


def jsqrt(u):
    if np.any(u[0] <= 0.0):
        raise ValueError("sqrt of a jet with nonpositive value")
    n1 = u.shape[0]
    out = np.empty_like(u)
    out[0] = np.sqrt(u[0])
    half_inv = 0.5 / out[0]
    for n in range(1, n1):
        acc = u[n].copy()
        for k in range(1, n):
            acc -= _BINOM[n, k] * (out[k] * out[n - k])
        out[n] = acc * half_inv
    return out


def sincos(u):
    n1 = u.shape[0]
    s = np.empty_like(u)
    c = np.empty_like(u)
    s[0] = np.sin(u[0])
    c[0] = np.cos(u[0])
    for n in range(n1 - 1):
        sa = u[1] * c[n]
        ca = u[1] * s[n]
        for k in range(1, n + 1):
            sa = sa + _BINOM[n, k] * (u[k + 1] * c[n - k])
            ca = ca + _BINOM[n, k] * (u[k + 1] * s[n - k])
        s[n + 1] = sa
        c[n + 1] = -ca
    return s, c


def sinhcosh(u):
    n1 = u.shape[0]
    sh = np.empty_like(u)
    ch = np.empty_like(u)
    sh[0] = np.sinh(u[0])
    ch[0] = np.cosh(u[0])
    for n in range(n1 - 1):
        sa = u[1] * ch[n]
        ca = u[1] * sh[n]
        for k in range(1, n + 1):
            sa = sa + _BINOM[n, k] * (u[k + 1] * ch[n - k])
            ca = ca + _BINOM[n, k] * (u[k + 1] * sh[n - k])
        sh[n + 1] = sa
        ch[n + 1] = ca
    return sh, ch


def pow_real(u, p):
    if np.any(u[0] <= 0.0):
        raise ValueError("real power of a jet with nonpositive value")
    n1 = u.shape[0]
    out = np.empty_like(u)
    out[0] = u[0] ** p
    inv = 1.0 / u[0]
    for n in range(n1 - 1):
        acc = p * (u[1] * out[n])
        for k in range(1, n + 1):
            acc = acc + _BINOM[n, k] * (p * (u[k + 1] * out[n - k]) - u[k] * out[n + 1 - k])
        out[n + 1] = acc * inv
    return out


def compose(g, u):
    """Derivative stack of g(u(x)) from g's stack w.r.t. its own argument.

    Caller guarantees g was expanded at the point u[0]; the constant term of
    the inner Taylor polynomial is dropped accordingly.
    """
    n1 = g.shape[0]
    fact = _FACT[:n1, None]
    gt = g / fact
    du = u / fact
    du[0] = 0.0
    r = np.zeros_like(g)
    r[0] = gt[n1 - 1]
    for k in range(n1 - 2, -1, -1):
        r = _tmul(r, du)
        r[0] += gt[k]
    return r * fact


def _tmul(a, b):
    n1 = a.shape[0]
    out = np.empty_like(a)
    for i in range(n1):
        acc = a[0] * b[i]
        for j in range(1, i + 1):
            acc = acc + a[j] * b[i - j]
        out[i] = acc
    return out
