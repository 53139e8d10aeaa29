"""Truncated-Taylor (jet) arithmetic and smooth-function evaluators.

A Jet holds the derivative values f(x), f'(x), ..., f^(order)(x) of one
function at one point (or, batched, at several points at once; every
operation then acts pointwise across the batch). The convention is
derivative values, not Taylor coefficients: slot k differs from the Taylor
coefficient by the factor k!.

A SmoothMap is an evaluator (x, order) -> Jet over an open interval, with an
optional finite set of interior breakpoints at which evaluation is refused
(piecewise-defined coefficients are smooth only between breakpoints).
"""

import math

import numpy as np

from ..errors import DomainError, OrderError
from ._backend import BACKEND, kernels

MAX_ORDER = 16

#: float binomial table, used by modules that form Leibniz sums directly.
BINOM = np.zeros((MAX_ORDER + 1, MAX_ORDER + 1))
for _n in range(MAX_ORDER + 1):
    for _k in range(_n + 1):
        BINOM[_n, _k] = math.comb(_n, _k)


def _check_order(order):
    if not 0 <= order <= MAX_ORDER:
        raise OrderError(f"jet order {order} outside supported range 0..{MAX_ORDER}")


class Jet:
    """Immutable stack of derivative values; supports arithmetic and powers.

    Internally 2-D: shape (order+1, width). Width-1 jets behave as scalars;
    width-B jets hold B evaluation points and operate elementwise.
    """

    __slots__ = ("_d",)

    def __init__(self, derivs):
        arr = np.asarray(derivs, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError("derivs must be a 1-D or 2-D array of derivative values")
        _check_order(arr.shape[0] - 1)
        if not np.all(np.isfinite(arr)):
            raise ValueError("jet derivatives must be finite (no NaN/inf)")
        self._d = np.ascontiguousarray(arr)

    @classmethod
    def _raw(cls, arr):
        # internal fast path: arr already validated, (n+1, B) contiguous
        self = object.__new__(cls)
        self._d = arr
        return self

    @classmethod
    def variable(cls, x, order):
        """Jet of the identity function at x; x may be a scalar or 1-D array."""
        _check_order(order)
        xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
        d = np.zeros((order + 1, xs.shape[0]))
        d[0] = xs
        if order >= 1:
            d[1] = 1.0
        return cls._raw(d)

    @classmethod
    def constant(cls, value, order, width=1):
        _check_order(order)
        d = np.zeros((order + 1, width))
        d[0] = value
        return cls._raw(d)

    @property
    def order(self):
        return self._d.shape[0] - 1

    @property
    def width(self):
        return self._d.shape[1]

    @property
    def derivs(self):
        """Derivative values; 1-D for width-1 jets, else (order+1, width)."""
        return self._d[:, 0].copy() if self._d.shape[1] == 1 else self._d.copy()

    @property
    def value(self):
        return float(self._d[0, 0]) if self._d.shape[1] == 1 else self._d[0].copy()

    def deriv(self, j):
        if not 0 <= j <= self.order:
            raise IndexError(f"derivative index {j} outside 0..{self.order}")
        return float(self._d[j, 0]) if self._d.shape[1] == 1 else self._d[j].copy()

    def truncate(self, order):
        if order > self.order:
            raise OrderError(f"cannot truncate order-{self.order} jet to order {order}")
        return Jet._raw(np.ascontiguousarray(self._d[: order + 1]))

    def derivative(self, m=1):
        """Jet of the m-th derivative (order drops by m)."""
        if m > self.order:
            raise OrderError(f"cannot shift order-{self.order} jet by {m}")
        return Jet._raw(np.ascontiguousarray(self._d[m:]))

    def _pair(self, other):
        a, b = self._d, other._d
        if a.shape[0] != b.shape[0]:
            raise ValueError(f"jet order mismatch: {a.shape[0]-1} vs {b.shape[0]-1}")
        if a.shape[1] != b.shape[1]:
            if a.shape[1] == 1:
                a = np.ascontiguousarray(np.broadcast_to(a, (a.shape[0], b.shape[1])))
            elif b.shape[1] == 1:
                b = np.ascontiguousarray(np.broadcast_to(b, (b.shape[0], a.shape[1])))
            else:
                raise ValueError("jet width mismatch")
        return a, b

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet._raw(a + b)
        d = self._d.copy()
        d[0] += other
        return Jet._raw(d)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet._raw(a - b)
        d = self._d.copy()
        d[0] -= other
        return Jet._raw(d)

    def __rsub__(self, other):
        d = -self._d
        d[0] += other
        return Jet._raw(d)

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet._raw(kernels.mul(a, b))
        return Jet._raw(self._d * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            a, b = self._pair(other)
            return Jet._raw(kernels.div(a, b))
        return Jet._raw(self._d * (1.0 / float(other)))

    def __rtruediv__(self, other):
        num = Jet.constant(float(other), self.order, self.width)
        return Jet._raw(kernels.div(num._d, self._d))

    def __neg__(self):
        return Jet._raw(-self._d)

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) or (isinstance(p, float) and p.is_integer()):
            return pow_int(self, int(p))
        return Jet._raw(kernels.pow_real(self._d, float(p)))

    def __repr__(self):
        if self.width == 1:
            return f"Jet({self._d[:, 0].tolist()})"
        return f"Jet(order={self.order}, width={self.width})"


def pow_int(u, k):
    """Integer power by binary exponentiation; valid for any jet value."""
    if k == 0:
        return Jet.constant(1.0, u.order, u.width)
    if k < 0:
        return 1.0 / pow_int(u, -k)
    acc = None
    base = u
    while True:
        if k & 1:
            acc = base if acc is None else acc * base
        k >>= 1
        if k == 0:
            return acc
        base = base * base


def exp(u):
    return Jet._raw(kernels.jexp(u._d))


def log(u):
    return Jet._raw(kernels.jlog(u._d))


def sqrt(u):
    return Jet._raw(kernels.jsqrt(u._d))


def sin(u):
    return Jet._raw(kernels.sincos(u._d)[0])


def cos(u):
    return Jet._raw(kernels.sincos(u._d)[1])


def tan(u):
    s, c = kernels.sincos(u._d)
    return Jet._raw(kernels.div(s, c))


def cot(u):
    s, c = kernels.sincos(u._d)
    return Jet._raw(kernels.div(c, s))


def sinh(u):
    return Jet._raw(kernels.sinhcosh(u._d)[0])


def cosh(u):
    return Jet._raw(kernels.sinhcosh(u._d)[1])


#: beyond this argument tanh/coth are +-1 to machine precision and sinh/cosh
#: overflow float64; the exact constant jet is returned there.
HYP_SATURATION = 350.0


def _hyp_ratio(u, flip):
    d = u._d
    big = np.abs(d[0]) > HYP_SATURATION
    if not big.any():
        sh, ch = kernels.sinhcosh(d)
        return Jet._raw(kernels.div(ch, sh) if flip else kernels.div(sh, ch))
    out = np.zeros_like(d)
    out[0] = np.sign(d[0])
    if not big.all():
        sub = np.ascontiguousarray(d[:, ~big])
        sh, ch = kernels.sinhcosh(sub)
        out[:, ~big] = kernels.div(ch, sh) if flip else kernels.div(sh, ch)
    return Jet._raw(out)


def tanh(u):
    return _hyp_ratio(u, flip=False)


def coth(u):
    return _hyp_ratio(u, flip=True)


def compose(outer, inner):
    """Jet of g(u(x)) given g's jet w.r.t. its own argument at u's value."""
    a, b = outer._pair(inner)
    return Jet._raw(kernels.compose(a, b))


ELEMENTARY = {
    "exp": exp, "ln": log, "log": log, "sqrt": sqrt,
    "sin": sin, "cos": cos, "tan": tan, "cot": cot,
    "sinh": sinh, "cosh": cosh, "tanh": tanh, "coth": coth,
}


# --- mollifier -------------------------------------------------------------

#: below this slack in 1 - t^2 the mollifier underflows; all derivatives
#: decay faster than any polynomial, so the exact zero jet is returned.
BUMP_EDGE = 1e-12


def bump_many(left, right, xs, order):
    """Derivative stacks of the mollifier exp(-1/(1-t^2)) rescaled to (left, right).

    Returns an (order+1, len(xs)) array; points at or outside the support get
    the exact zero stack.
    """
    _check_order(order)
    if not left < right:
        raise ValueError(f"empty bump support [{left}, {right}]")
    xs = np.asarray(xs, dtype=np.float64)
    out = np.zeros((order + 1, xs.shape[0]))
    half = 0.5 * (right - left)
    t = (xs - 0.5 * (left + right)) / half
    slack = 1.0 - t * t
    inside = slack > BUMP_EDGE
    if np.any(inside):
        tj = np.zeros((order + 1, int(inside.sum())))
        tj[0] = t[inside]
        if order >= 1:
            tj[1] = 1.0 / half
        tjet = Jet._raw(tj)
        arg = -1.0 / (1.0 - tjet * tjet)
        out[:, inside] = exp(arg)._d
    return out


def bump(support, x, order):
    """Jet of the standard mollifier on ``support`` at a single point x."""
    left, right = support
    return Jet._raw(bump_many(left, right, np.atleast_1d(float(x)), order))


# --- smooth maps -----------------------------------------------------------

class SmoothMap:
    """Evaluator from (point, order) to Jet over an open interval.

    ``fn_many(xs, order)`` must return an (order+1, len(xs)) array of
    derivative values and be safe to call concurrently. Breakpoints are
    interior points where evaluation is refused.
    """

    __slots__ = ("domain", "breakpoints", "_fn_many", "name")

    def __init__(self, fn_many, domain, breakpoints=(), name=""):
        a, b = float(domain[0]), float(domain[1])
        if not a < b:
            raise ValueError(f"empty domain ({a}, {b})")
        self.domain = (a, b)
        self.breakpoints = tuple(sorted(float(p) for p in breakpoints))
        for p in self.breakpoints:
            if not a < p < b:
                raise ValueError(f"breakpoint {p} outside domain ({a}, {b})")
        self._fn_many = fn_many
        self.name = name

    @classmethod
    def from_jet_fn(cls, jet_fn, domain, breakpoints=(), name=""):
        """Build from a function Jet -> Jet applied to the variable jet."""

        def fn_many(xs, order):
            return jet_fn(Jet.variable(xs, order))._d

        return cls(fn_many, domain, breakpoints, name=name)

    def _check_points(self, xs):
        a, b = self.domain
        if np.any(xs <= a) or np.any(xs >= b):
            bad = xs[(xs <= a) | (xs >= b)][0]
            raise DomainError(
                f"{self.name or 'map'}: point {bad} outside open domain ({a}, {b})",
                x=float(bad),
            )
        for p in self.breakpoints:
            if np.any(xs == p):
                raise DomainError(
                    f"{self.name or 'map'}: evaluation at breakpoint {p}", x=p
                )

    def evaluate_many(self, xs, order):
        """Derivative stacks at several points: array (order+1, len(xs))."""
        _check_order(order)
        xs = np.ascontiguousarray(xs, dtype=np.float64)
        self._check_points(xs)
        d = self._fn_many(xs, order)
        if not np.all(np.isfinite(d)):
            j = np.argwhere(~np.isfinite(d))[0]
            raise DomainError(
                f"{self.name or 'map'}: non-finite derivative {j[0]} at x={xs[j[1]]}",
                x=float(xs[j[1]]),
            )
        return d

    def evaluate(self, x, order):
        return Jet._raw(self.evaluate_many(np.atleast_1d(float(x)), order))

    def value(self, x):
        return float(self.evaluate_many(np.atleast_1d(float(x)), 0)[0, 0])

    def values(self, xs):
        return self.evaluate_many(xs, 0)[0]

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return f"SmoothMap{nm} on {self.domain}, breakpoints={list(self.breakpoints)}"


def constant_map(value, domain, name=""):
    v = float(value)

    def fn_many(xs, order):
        d = np.zeros((order + 1, xs.shape[0]))
        d[0] = v
        return d

    return SmoothMap(fn_many, domain, name=name or f"const {v}")


__all__ = [
    "BACKEND", "BINOM", "MAX_ORDER", "BUMP_EDGE", "Jet", "SmoothMap",
    "bump", "bump_many", "compose", "constant_map", "cos", "cosh", "cot",
    "coth", "exp", "log", "pow_int", "sin", "sinh", "sqrt", "tan", "tanh",
    "ELEMENTARY",
]
