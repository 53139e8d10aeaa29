"""First-order coefficient construction via Sturm-Liouville solutions.

Setting the derived weight equal to a target g turns the unknown lowest
coefficient a_0 into a Riccati variable; the substitution a_0 = -a_1 u'/u
linearizes it to

    -(p(x) u'(x))' - g(x) u(x) = 0,      p = a_1^2,

so a positive solution u on the working interval yields a_0 = -a_1 u'/u and
the weight is g by construction. The same machinery decides the
positive-solution checks behind improving-potential and weighted-pair
conditions (in their integrating-factor forms) and locates the threshold
coupling where the first zero reaches the right endpoint.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ODEError
from .jets import Jet, SmoothMap
from .specials import brent

# Dormand-Prince 5(4) tableau
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)

RTOL = 1e-10
ATOL = 1e-12
MAX_STEPS = 1_000_000


def integrate_ode(f, x0, y0, x1, rtol=RTOL, atol=ATOL, max_steps=MAX_STEPS):
    """Adaptive Dormand-Prince 5(4) from x0 to x1 (x1 > x0).

    Returns (xs, ys, fs): accepted nodes, states, and slopes, for cubic
    Hermite dense output.
    """
    span = x1 - x0
    if span <= 0.0:
        raise ValueError("integrate_ode requires x1 > x0")
    x = x0
    y = np.asarray(y0, dtype=np.float64)
    k1 = f(x, y)
    xs, ys, fs = [x], [y.copy()], [k1.copy()]
    h = span * 1e-4
    steps = 0
    ks = [None] * 7
    while x < x1:
        if steps >= max_steps:
            raise ODEError(f"step budget {max_steps} exhausted at x={x}", x=x)
        h = min(h, x1 - x)
        if h < 1e-14 * max(abs(x), 1.0):
            raise ODEError(f"step size collapsed at x={x}", x=x)
        ks[0] = k1
        failed = False
        for i in range(1, 7):
            yi = y + h * sum(_A[i][j] * ks[j] for j in range(i))
            try:
                ks[i] = f(x + _C[i] * h, yi)
            except (DomainError, FloatingPointError):
                failed = True
                break
        if failed:
            h *= 0.5
            steps += 1
            continue
        y5 = y + h * sum(_B5[j] * ks[j] for j in range(7))
        y4 = y + h * sum(_B4[j] * ks[j] for j in range(7))
        sc = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = math.sqrt(float(np.mean(((y5 - y4) / sc) ** 2)))
        steps += 1
        if err <= 1.0:
            x += h
            y = y5
            k1 = ks[6]  # FSAL
            xs.append(x)
            ys.append(y.copy())
            fs.append(k1.copy())
        factor = 0.9 * err ** -0.2 if err > 0.0 else 5.0
        h *= min(5.0, max(0.2, factor))
    return np.array(xs), np.array(ys), np.array(fs)


def _hermite(xq, xs, vals, slopes):
    """Cubic Hermite interpolation of (vals, slopes) sampled at nodes xs."""
    xq = np.asarray(xq, dtype=np.float64)
    idx = np.clip(np.searchsorted(xs, xq) - 1, 0, len(xs) - 2)
    x0, x1 = xs[idx], xs[idx + 1]
    h = x1 - x0
    t = (xq - x0) / h
    h00 = (1 + 2 * t) * (1 - t) ** 2
    h10 = t * (1 - t) ** 2
    h01 = t * t * (3 - 2 * t)
    h11 = t * t * (t - 1)
    return (
        h00 * vals[idx]
        + h10 * h * slopes[idx]
        + h01 * vals[idx + 1]
        + h11 * h * slopes[idx + 1]
    )


# --- problem/solution containers ----------------------------------------------

@dataclass(frozen=True)
class PowerStart:
    """Leading behavior u ~ (x - a)^sigma at the left endpoint."""

    sigma: float


@dataclass(frozen=True)
class ExplicitStart:
    """Explicit data at a + offset: u and u' there."""

    offset: float
    u: float
    du: float


@dataclass(frozen=True)
class SturmProblem:
    p: SmoothMap
    g: SmoothMap
    domain: tuple
    ic: object
    stop_offset: float = None


def _default_offset(a, b):
    return max(1e-8, 1e-6 * min(1.0, b - a))


class SturmSolution:
    """Dense solution of -(p u')' - g u = 0 with positivity bookkeeping."""

    def __init__(self, problem, xs, us, vs):
        self.problem = problem
        self.xs = xs
        self.us = us
        self.vs = vs  # v = p u'
        p_jets = problem.p.evaluate_many(xs, 1)
        g_vals = problem.g.evaluate_many(xs, 0)[0]
        self.dus = vs / p_jets[0]
        # u'' from the equation: (p u')' = -g u  =>  p u'' = -g u - p' u'
        self.d2us = (-g_vals * us - p_jets[1] * self.dus) / p_jets[0]
        self.first_zero = self._locate_first_zero()
        self.positive = self.first_zero is None

    def u(self, x):
        return _hermite(x, self.xs, self.us, self.dus)

    def u_prime(self, x):
        return _hermite(x, self.xs, self.dus, self.d2us)

    def _locate_first_zero(self):
        # node-level sign scan plus a few interior samples per step
        s = np.sign(self.us)
        for i in range(len(self.xs) - 1):
            bracket = None
            if s[i] != 0 and s[i + 1] != 0 and s[i] != s[i + 1]:
                bracket = (self.xs[i], self.xs[i + 1])
            else:
                ts = np.linspace(self.xs[i], self.xs[i + 1], 7)[1:-1]
                vals = self.u(ts)
                flip = np.nonzero(np.sign(vals) * s[i] < 0)[0]
                if s[i] != 0 and flip.size:
                    bracket = (self.xs[i], ts[flip[0]])
            if bracket is not None:
                lo, hi = bracket
                for _ in range(200):
                    mid = 0.5 * (lo + hi)
                    if hi - lo < 1e-12 * max(1.0, abs(mid)):
                        break
                    if self.u(np.array([mid]))[0] * self.u(np.array([lo]))[0] <= 0:
                        hi = mid
                    else:
                        lo = mid
                return 0.5 * (lo + hi)
        return None


def solve_sturm(problem, rtol=RTOL, atol=ATOL, max_steps=MAX_STEPS):
    """Shoot -(p u')' = g u across the (offset-trimmed) domain."""
    a, b = problem.domain
    if math.isinf(b) and problem.stop_offset is None:
        raise ValueError("unbounded domain: provide stop_offset to bound the solve")
    if isinstance(problem.ic, PowerStart):
        eps = _default_offset(a, b if not math.isinf(b) else a + 1.0)
        sigma = problem.ic.sigma
        x0 = a + eps
        u0 = eps**sigma
        du0 = sigma * eps ** (sigma - 1.0) if sigma != 0.0 else 0.0
    elif isinstance(problem.ic, ExplicitStart):
        x0 = a + problem.ic.offset
        u0, du0 = problem.ic.u, problem.ic.du
    else:
        raise TypeError(f"unsupported initial data {problem.ic!r}")
    if u0 == 0.0 and du0 == 0.0:
        raise ValueError("initial data u and u' cannot both vanish")
    stop = problem.stop_offset
    if stop is None:
        stop = _default_offset(a, b)
    x1 = b - stop

    p, g = problem.p, problem.g

    def f(x, y):
        pv = p.value(x)
        return np.array([y[1] / pv, -g.value(x) * y[0]])

    v0 = p.value(x0) * du0
    xs, ys, _ = integrate_ode(f, x0, np.array([u0, v0]), x1, rtol, atol, max_steps)
    return SturmSolution(problem, xs, ys[:, 0], ys[:, 1])


def ode_jet_extend(p_stack, g_stack, u0, u1, order):
    """Jet of u from (u, u') and the equation -(p u')' = g u.

    ``p_stack`` must reach order-1 derivatives, ``g_stack`` order-2; both are
    arrays (>= order, batch) in the derivative-value convention.
    """
    width = np.shape(u0)[0] if np.ndim(u0) else 1
    u = np.zeros((order + 1, width))
    u[0] = u0
    if order >= 1:
        u[1] = u1
    for k in range(order - 1):
        acc = np.zeros(width)
        for i in range(k + 1):
            acc += math.comb(k, i) * g_stack[i] * u[k - i]
        for i in range(1, k + 2):
            acc += math.comb(k + 1, i) * p_stack[i] * u[k + 2 - i]
        u[k + 2] = -acc / p_stack[0]
    return Jet._raw(u)


def construct_a0(a1, sol, domain=None):
    """The constructed coefficient -a1 u'/u as a SmoothMap with full jets.

    Value and slope of u come from the dense output; higher derivatives from
    the equation itself, so the jets do not inherit the interpolant's limited
    smoothness. The working domain defaults to the solved range, clipped at
    the first zero of u.
    """
    prob = sol.problem
    if domain is None:
        hi = sol.first_zero if sol.first_zero is not None else sol.xs[-1]
        domain = (sol.xs[0], hi)
    lo, hi = domain
    if not (sol.xs[0] <= lo < hi <= sol.xs[-1] + 1e-12):
        raise ValueError(f"domain {domain} outside solved range")

    p, g = prob.p, prob.g

    def fn_many(xs, order):
        u0 = sol.u(xs)
        if np.any(u0 <= 0.0):
            bad = xs[u0 <= 0.0][0]
            raise DomainError(f"u vanishes on working interval near x={bad}", x=bad)
        u1 = sol.u_prime(xs)
        p_stack = p.evaluate_many(xs, order)
        g_stack = g.evaluate_many(xs, max(order - 1, 0))
        ujet = ode_jet_extend(p_stack, g_stack, u0, u1, order + 1)
        ratio = ujet.derivative(1) / ujet.truncate(order)
        a1jet = Jet._raw(a1.evaluate_many(xs, order))
        return (-(a1jet * ratio))._d

    return SmoothMap(fn_many, domain, name="-a1*u'/u")


# --- positive-solution checks ---------------------------------------------------

@dataclass(frozen=True)
class PositivityResult:
    """Outcome of a positive-solution shoot on (0, R)."""

    positive: bool
    first_zero: float
    boundary: bool
    c: float

    def __bool__(self):
        return self.positive


#: first zeros within this relative distance of R count as boundary cases
BOUNDARY_RTOL = 1e-6


def _positivity_from_sol(sol, R, c):
    z = sol.first_zero
    if z is None:
        near_zero_end = bool(abs(sol.us[-1]) < 1e-8 * float(np.max(np.abs(sol.us))))
        return PositivityResult(True, None, near_zero_end, c)
    if z >= R * (1.0 - BOUNDARY_RTOL):
        return PositivityResult(True, float(z), True, c)
    return PositivityResult(False, float(z), False, c)


def _weighted_pair_problem(V, W, k, c, R, eps):
    from .jets import pow_int

    def p_many(xs, order):
        rj = Jet.variable(xs, order)
        vj = Jet._raw(V.evaluate_many(xs, order))
        return (pow_int(rj, k - 1) * vj)._d

    def g_many(xs, order):
        rj = Jet.variable(xs, order)
        wj = Jet._raw(W.evaluate_many(xs, order))
        return (c * (pow_int(rj, k - 1) * wj))._d

    p = SmoothMap(p_many, (0.0, R), name=f"r^{k - 1} V")
    g = SmoothMap(g_many, (0.0, R), name=f"c r^{k - 1} W")
    v0, w0 = V.value(eps), W.value(eps)
    if v0 <= 0.0:
        raise DomainError(f"V must be positive near 0, got {v0}")
    # regular-at-zero start y(0+) = 1: y ~ 1 - c W(0) r^2 / (2 k V(0))
    y_eps = 1.0 - c * w0 * eps * eps / (2.0 * k * v0)
    dy_eps = -c * w0 * eps / (k * v0)
    ic = ExplicitStart(offset=eps, u=y_eps, du=dy_eps)
    return SturmProblem(p, g, (0.0, R), ic, stop_offset=R * 1e-9)


def bessel_pair_check(V, W, k, c, R, rtol=RTOL, atol=ATOL):
    """Positive-solution check for -(r^(k-1) V y')' - c r^(k-1) W y = 0.

    With k = 2 and V = 1 this is exactly the improving-potential equation
    with P = W.
    """
    if c <= 0.0:
        return PositivityResult(True, None, False, c)
    eps = max(1e-8, 1e-6 * R)
    prob = _weighted_pair_problem(V, W, k, c, R, eps)
    sol = solve_sturm(prob, rtol=rtol, atol=atol)
    return _positivity_from_sol(sol, R, c)


def hi_potential_check(P, c, R, rtol=RTOL, atol=ATOL):
    """Does y'' + y'/r + c P y = 0 keep a positive regular solution on (0, R)?

    Uses the integrating-factor form -(r y')' - c r P(r) y = 0, i.e. the
    weighted-pair check in two dimensions with unit V and W = P.
    """
    from .jets import constant_map

    return bessel_pair_check(constant_map(1.0, (0.0, R)), P, 2, c, R, rtol, atol)


def critical_c(check, R, c_init=None, rel_tol=1e-8, rtol=1e-9, atol=1e-11):
    """Threshold coupling where the first zero reaches R.

    ``check`` is a callable c -> PositivityResult (e.g. a partial of
    hi_potential_check). Below the threshold the solution is positive on
    (0, R); above it the zero moves inside. Bisection over c.
    """
    c_lo = c_init if c_init is not None else 0.5 / (R * R)
    res = check(c_lo)
    while not res.positive:
        c_lo *= 0.5
        if c_lo < 1e-12 / (R * R):
            raise ValueError("no positive-solution coupling found above 1e-12/R^2")
        res = check(c_lo)
    c_hi = 2.0 * c_lo
    while check(c_hi).positive:
        c_hi *= 2.0
        if c_hi > 1e12 / (R * R):
            raise ValueError("positive solutions persist up to 1e12/R^2")
    while c_hi - c_lo > rel_tol * c_hi:
        mid = 0.5 * (c_lo + c_hi)
        if check(mid).positive:
            c_lo = mid
        else:
            c_hi = mid
    return 0.5 * (c_lo + c_hi)


def hi_critical_c(P, R, rel_tol=1e-8):
    return critical_c(
        lambda c: hi_potential_check(P, c, R, rtol=1e-9, atol=1e-11), R,
        rel_tol=rel_tol,
    )


def bessel_pair_critical_c(V, W, k, R, rel_tol=1e-8):
    return critical_c(
        lambda c: bessel_pair_check(V, W, k, c, R, rtol=1e-9, atol=1e-11), R,
        rel_tol=rel_tol,
    )


# --- alternative first-order construction ---------------------------------------

def alt_construct_a1(a0, g, x0, C=0.0, tol=1e-12):
    """Solve (a0 a1)' = a0^2 + g for a1 given a0.

    a1(x) = (C + integral_{x0}^{x} (a0^2 + g) dt) / a0(x). The anchor x0 may
    be +inf when the integrand decays (the tail integral is mapped to a
    bounded one by t -> 1/t). Derivatives need no quadrature at all: the
    integral's jet is the integrand's, shifted.
    """
    from .verifier import integrate_vector

    a, b = a0.domain
    bps = sorted(set(a0.breakpoints) | set(g.breakpoints))

    def hsum(xs, order):
        j0 = Jet._raw(a0.evaluate_many(xs, order))
        return (j0 * j0)._d + g.evaluate_many(xs, order)

    def anti_values(xs):
        # cumulative quadrature, segment by segment over the sorted points
        order_idx = np.argsort(xs)
        out = np.empty_like(xs)
        if math.isinf(x0):
            for i in order_idx:
                xi = float(xs[i])
                tail, _ = integrate_vector(
                    lambda s: hsum(1.0 / s, 0) / s**2, 0.0, 1.0 / xi, tol=tol
                )
                out[i] = C - float(tail[0])
            return out
        acc = C
        prev = float(x0)
        for i in order_idx:
            xi = float(xs[i])
            lo, hi = min(prev, xi), max(prev, xi)
            inner = [p for p in bps if lo < p < hi]
            if hi > lo:
                seg, _ = integrate_vector(lambda s: hsum(s, 0), lo, hi, inner, tol=tol)
                acc += float(seg[0]) if xi >= prev else -float(seg[0])
            out[i] = acc
            prev = xi
        return out

    def fn_many(xs, order):
        vals = anti_values(np.asarray(xs, dtype=np.float64))
        d = np.empty((order + 1, xs.shape[0]))
        d[0] = vals
        if order >= 1:
            d[1:] = hsum(xs, order - 1)
        j0 = Jet._raw(a0.evaluate_many(xs, order))
        return (Jet._raw(d) / j0)._d

    return SmoothMap(fn_many, a0.domain, bps, name="(C+int(a0^2+g))/a0")
