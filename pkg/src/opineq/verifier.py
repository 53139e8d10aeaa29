"""Numerical verification of derived inequalities.

The central oracle is the exact residual identity

    integral (a_n f^(n))^2  -  sum_m integral c_{n,m} (f^(m))^2
        =  integral ( sum_k a_k f^(k) )^2

for every compactly supported test function f. Both sides are computed by
independent quadratures; their gap measures everything that could be wrong in
the weight derivation, and the right-hand side is a square, so the margin of
the inequality is nonnegative whenever the weights are.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError
from .jets import Jet, bump_many

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)

#: default absolute quadrature tolerance per integral
TOL_QUAD = 1e-10
#: identity-gap acceptance: gap <= TOL_IDENTITY * (1 + residual)
TOL_IDENTITY = 1e-8
#: margin verdict slack
TOL_MARGIN = 1e-10
#: per-panel relative error floor; below it refinement only amplifies rounding
_REL_FLOOR = 1e-12
_MAX_DEPTH = 60


def _gl15(f_many, a, b):
    half = 0.5 * (b - a)
    xs = 0.5 * (a + b) + half * _GL_NODES
    return half * (f_many(xs) @ _GL_WEIGHTS)


def integrate_vector(f_many, a, b, breakpoints=(), tol=TOL_QUAD):
    """Adaptive panel Gauss-Legendre (15-point) for a vector integrand.

    ``f_many(xs)`` returns an array (components, len(xs)). Panels never
    straddle a breakpoint; each splits until the two-half refinement changes
    it by less than tol scaled by its share of the total length.
    Returns (values, error_estimates), both arrays over components.
    """
    edges = [a] + [p for p in sorted(breakpoints) if a < p < b] + [b]
    total = b - a

    def rec(lo, hi, coarse, depth):
        if depth > _MAX_DEPTH:
            raise QuadratureError(
                f"quadrature did not converge on panel [{lo}, {hi}]",
                panel=(lo, hi),
            )
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise QuadratureError(
                f"panel [{lo}, {hi}] collapsed to machine width without converging",
                panel=(lo, hi),
            )
        left = _gl15(f_many, lo, mid)
        right = _gl15(f_many, mid, hi)
        fine = left + right
        err = np.abs(fine - coarse)
        # mixed criterion: absolute share of the global tolerance plus a
        # relative rounding floor (refining past it only churns noise)
        if np.all(err <= tol * (hi - lo) / total + _REL_FLOOR * np.abs(fine)):
            return fine, err
        lv, le = rec(lo, mid, left, depth + 1)
        rv, re_ = rec(mid, hi, right, depth + 1)
        return lv + rv, le + re_

    value = None
    err = None
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = rec(lo, hi, _gl15(f_many, lo, hi), 0)
        value = v if value is None else value + v
        err = e if err is None else err + e
    return value, err


def integrate(g, interval, breakpoints=(), tol=TOL_QUAD):
    """Scalar adaptive quadrature; ``g`` is a SmoothMap or vectorized callable."""
    a, b = interval
    if hasattr(g, "values"):
        fm = lambda xs: np.asarray(g.values(xs))[None, :]
        bps = set(breakpoints) | set(getattr(g, "breakpoints", ()))
    else:
        fm = lambda xs: np.asarray(g(xs), dtype=np.float64)[None, :]
        bps = set(breakpoints)
    v, e = integrate_vector(fm, a, b, sorted(bps), tol=tol)
    return float(v[0]), float(e[0])


# --- test functions ----------------------------------------------------------

@dataclass(frozen=True)
class TestFunction:
    """Polynomial-modulated mollifier: poly(x) * bump on (left, right)."""

    support: tuple
    coefficients: tuple

    def __post_init__(self):
        left, right = self.support
        if not left < right:
            raise ValueError(f"empty support {self.support}")
        if len(self.coefficients) > 13:
            raise ValueError("modulation degree is capped at 12")
        if not any(c != 0.0 for c in self.coefficients):
            raise ValueError("modulation polynomial is identically zero")

    def evaluate_many(self, xs, order):
        xs = np.asarray(xs, dtype=np.float64)
        b = Jet._raw(bump_many(*self.support, xs, order))
        xj = Jet.variable(xs, order)
        p = Jet.constant(self.coefficients[-1], order, xs.shape[0])
        for c in reversed(self.coefficients[:-1]):
            p = p * xj + c
        return (p * b)._d

    def evaluate(self, x, order):
        return Jet._raw(self.evaluate_many(np.atleast_1d(float(x)), order))


def default_support(domain, rng=None):
    """A support window per the corpus policy: the central 60% of finite
    domains, a [1, 2]-style window on half-infinite ones; randomized when an
    rng is given."""
    a, b = domain
    if math.isinf(a) and math.isinf(b):
        base_lo, base_hi = -1.0, 1.0
    elif math.isinf(b):
        base_lo, base_hi = a + 1.0, a + 2.0
    elif math.isinf(a):
        base_lo, base_hi = b - 2.0, b - 1.0
    else:
        span = b - a
        base_lo, base_hi = a + 0.2 * span, b - 0.2 * span
    if rng is None:
        return (base_lo, base_hi)
    width = base_hi - base_lo
    left = base_lo + rng.uniform(0.0, 0.5) * width
    right = left + max(0.3, rng.uniform(0.4, 1.0)) * (base_hi - left)
    return (left, min(right, base_hi))


def random_test_functions(domain, count, seed=0, max_degree=6):
    """Deterministic corpus of modulated bumps on randomized sub-supports."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        support = default_support(domain, rng)
        degree = int(rng.integers(0, max_degree + 1))
        coeffs = rng.uniform(-1.0, 1.0, degree + 1)
        if np.max(np.abs(coeffs)) < 1e-2:
            continue
        out.append(TestFunction(support=support, coefficients=tuple(coeffs)))
    return out


# --- instance evaluation -------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    lhs: float
    rhs_terms: tuple
    residual_direct: float
    identity_gap: float
    margin: float
    identity_ok: bool
    margin_ok: bool
    quad_errors: tuple
    support: tuple

    def as_dict(self):
        return {
            "lhs": self.lhs,
            "rhs": list(self.rhs_terms),
            "residual": self.residual_direct,
            "gap": self.identity_gap,
            "margin": self.margin,
            "identity_ok": self.identity_ok,
            "margin_ok": self.margin_ok,
            "support": list(self.support),
        }


def evaluate_instance(weights, f, tol_quad=TOL_QUAD, tol_identity=TOL_IDENTITY,
                      tol_margin=TOL_MARGIN):
    """Verify one test function against a WeightSet.

    Integrates, with shared adaptive panels, the components
    [lhs, rhs_0..rhs_{n-1}, residual] and checks margin and identity gap.
    """
    sys = weights.system
    n = weights.n
    left, right = f.support
    a, b = weights.domain
    if not (a < left < right < b):
        raise ValueError(f"support {f.support} not inside domain {weights.domain}")

    def components(xs):
        fd = f.evaluate_many(xs, n)
        rows = np.empty((n + 2, xs.shape[0]))
        rows[0] = weights.lhs_weight.evaluate_many(xs, 0)[0] * fd[n] ** 2
        for m in range(n):
            rows[1 + m] = weights.c[m].evaluate_many(xs, 0)[0] * fd[m] ** 2
        tf = np.zeros(xs.shape[0])
        for k in range(n + 1):
            tf += sys.a[k].evaluate_many(xs, 0)[0] * fd[k]
        rows[n + 1] = tf**2
        return rows

    bps = [p for p in weights.breakpoints if left < p < right]
    vals, errs = integrate_vector(components, left, right, bps, tol=tol_quad)
    lhs = float(vals[0])
    rhs = tuple(float(v) for v in vals[1 : n + 1])
    residual = float(vals[n + 1])
    margin = lhs - sum(rhs)
    gap = abs(margin - residual)
    return VerificationReport(
        lhs=lhs,
        rhs_terms=rhs,
        residual_direct=residual,
        identity_gap=gap,
        margin=margin,
        identity_ok=gap <= tol_identity * (1.0 + abs(residual)),
        margin_ok=margin >= -tol_margin,
        quad_errors=tuple(float(e) for e in errs),
        support=f.support,
    )


def rayleigh_probe(weights, family, tol_quad=TOL_QUAD):
    """Smallest lhs / sum(rhs) ratio over a family of test functions.

    The ratio is >= 1 whenever the inequality holds; pushing the family toward
    an extremal direction drives it down toward the sharp constant.
    """
    ratios = []
    for f in family:
        rep = evaluate_instance(weights, f, tol_quad=tol_quad)
        denom = sum(rep.rhs_terms)
        if denom > 0.0:
            ratios.append(rep.lhs / denom)
        else:
            ratios.append(math.inf)
    if all(math.isinf(r) for r in ratios):
        raise ValueError("degenerate family: sum of rhs terms vanishes throughout")
    return min(ratios), ratios


@dataclass(frozen=True)
class CorpusReport:
    seed: int
    reports: tuple
    all_identity_ok: bool
    all_margin_ok: bool

    @property
    def passed(self):
        return self.all_identity_ok and self.all_margin_ok


def verify_corpus(weights, corpus=16, seed=0, tol_quad=TOL_QUAD,
                  tol_identity=TOL_IDENTITY, tol_margin=TOL_MARGIN):
    """Run the residual-identity oracle over a deterministic corpus."""
    fams = random_test_functions(weights.domain, corpus, seed=seed)
    reports = tuple(
        evaluate_instance(weights, f, tol_quad, tol_identity, tol_margin)
        for f in fams
    )
    return CorpusReport(
        seed=seed,
        reports=reports,
        all_identity_ok=all(r.identity_ok for r in reports),
        all_margin_ok=all(r.margin_ok for r in reports),
    )
