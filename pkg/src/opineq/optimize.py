"""Scalar minimization helpers shared by scans and the catalog optimizers."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f, a, b, tol=1e-10, maxiter=200):
    """Golden-section minimum of f on [a, b]; returns (x, f(x))."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) <= tol * (1.0 + abs(a) + abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def quad_vertex(f, x0=0.0, h=1.0):
    """Vertex of a quadratic from three exact samples; (x*, f(x*)).

    Exact (up to rounding) when f really is a parabola.
    """
    f0, f1, f2 = f(x0 - h), f(x0), f(x0 + h)
    denom = f0 - 2.0 * f1 + f2
    if denom == 0.0:
        raise ValueError("samples are collinear; no quadratic vertex")
    x = x0 + 0.5 * h * (f0 - f2) / denom
    return x, f(x)


def poly_fit_coeffs(f, degree, center=0.0, spread=1.0):
    """Coefficients (ascending) of a polynomial f from degree+1 exact samples."""
    import numpy as np

    xs = center + spread * np.arange(-(degree / 2.0), degree / 2.0 + 0.5)
    ys = np.array([f(float(x)) for x in xs])
    v = np.vander(xs, degree + 1, increasing=True)
    return np.linalg.solve(v, ys)
