"""Derived inequality weights from a coefficient system.

Given the factor T = sum_k a_k(x) d^k/dx^k, the refined inequality

    integral (a_n f^(n))^2 >= sum_{m<n} integral c_{n,m} (f^(m))^2

holds with

    c_{n,m} = -a_m^2 - sum_{j=0}^{m} sum_{k=max(j+1, 2m-j)}^{n}
              (-1)^(k-j) t[k-j][m-j] (a_j a_k)^((k+j-2m))

where t is the integer triangle in lucas. Product derivatives are read off
products of jets of the factors, never off a stored product map, so a weight
re-evaluates from scratch on every call.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .jets import MAX_ORDER, Jet, SmoothMap
from .lucas import t_coeff
from .optimize import golden_min


@dataclass(frozen=True)
class CoeffSystem:
    """The tuple (n, domain, a_0..a_n) defining a factor of order n."""

    n: int
    domain: tuple
    a: tuple
    breakpoints: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("system order n must be >= 1")
        if len(self.a) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficient maps, got {len(self.a)}")


def make_system(a_maps, domain=None):
    """Assemble a CoeffSystem, merging the coefficient maps' breakpoints."""
    a_maps = tuple(a_maps)
    if domain is None:
        domain = a_maps[0].domain
    for m in a_maps:
        if m.domain != tuple(domain):
            raise ValueError(
                f"coefficient domains differ: {m.domain} vs {tuple(domain)}"
            )
    bps = sorted({p for m in a_maps for p in m.breakpoints})
    return CoeffSystem(
        n=len(a_maps) - 1, domain=tuple(domain), a=a_maps, breakpoints=tuple(bps)
    )


def _k_lower(j, m, pruned):
    return max(j + 1, 2 * m - j) if pruned else j + 1


def _weight_stacks(sys, xs, ms, order, pruned=True, return_a_jets=False):
    """Derivative stacks of the weights c_{n,m} for each m in ``ms``.

    Returns an array (len(ms), order+1, len(xs)); with ``return_a_jets`` also
    the order-(n+order) jets of every coefficient map (reused by callers that
    need the raw a_k values at the same points).
    """
    n = sys.n
    top = n + order
    if top > MAX_ORDER:
        raise DomainError(f"weight evaluation needs jet order {top} > {MAX_ORDER}")
    a_jets = [a.evaluate_many(xs, top) for a in sys.a]
    out = np.empty((len(ms), order + 1, xs.shape[0]))
    prod_cache = {}
    for mi, m in enumerate(ms):
        am = Jet._raw(np.ascontiguousarray(a_jets[m][: order + 1]))
        acc = -(am * am)._d
        for j in range(m + 1):
            for k in range(_k_lower(j, m, pruned), n + 1):
                t = t_coeff(k - j, m - j)
                if t == 0:
                    continue
                key = (j, k)
                if key not in prod_cache:
                    prod_cache[key] = Jet._raw(a_jets[j]) * Jet._raw(a_jets[k])
                shift = k + j - 2 * m
                dstack = prod_cache[key]._d[shift : shift + order + 1]
                sign = -1.0 if (k - j) % 2 else 1.0
                acc = acc - (sign * t) * dstack
        out[mi] = acc
    if return_a_jets:
        return out, a_jets
    return out


@dataclass(frozen=True)
class WeightSet:
    """Derived weights: lhs a_n^2 and c_{n,0}..c_{n,n-1} as evaluators."""

    n: int
    domain: tuple
    breakpoints: tuple
    lhs_weight: SmoothMap
    c: tuple
    system: CoeffSystem


def derive_weights(sys, pruned=True):
    """Build the WeightSet for a CoeffSystem.

    ``pruned=False`` drops the max(j+1, 2m-j) lower bound and starts every
    inner sum at k=j+1; the skipped terms carry zero coefficients, so both
    settings must agree (tested as an invariant).
    """
    n = sys.n

    def c_fn(m):
        def fn_many(xs, order):
            return _weight_stacks(sys, xs, [m], order, pruned=pruned)[0]

        return fn_many

    def lhs_many(xs, order):
        j = Jet._raw(sys.a[n].evaluate_many(xs, order))
        return (j * j)._d

    c_maps = tuple(
        SmoothMap(c_fn(m), sys.domain, sys.breakpoints, name=f"c[{n},{m}]")
        for m in range(n)
    )
    lhs = SmoothMap(lhs_many, sys.domain, sys.breakpoints, name=f"a{n}^2")
    return WeightSet(
        n=n,
        domain=sys.domain,
        breakpoints=sys.breakpoints,
        lhs_weight=lhs,
        c=c_maps,
        system=sys,
    )


def specialize_first_order(a0, a1):
    """The n=1 weight -a0^2 + (a0 a1)' as a direct closed small-order form."""

    def fn_many(xs, order):
        j0 = Jet._raw(a0.evaluate_many(xs, order + 1))
        j1 = Jet._raw(a1.evaluate_many(xs, order + 1))
        prod = (j0 * j1).derivative(1)
        a0t = j0.truncate(order)
        return (prod - a0t * a0t)._d

    bps = sorted(set(a0.breakpoints) | set(a1.breakpoints))
    if a0.domain != a1.domain:
        raise ValueError(f"domain mismatch: {a0.domain} vs {a1.domain}")
    return SmoothMap(fn_many, a0.domain, bps, name="c[1,0]")


def specialize_second_order(a0, a1, a2):
    """The n=2 weights (c_{2,0}, c_{2,1}) in closed small-order form."""
    if not (a0.domain == a1.domain == a2.domain):
        raise ValueError("domain mismatch among coefficients")
    bps = sorted(set(a0.breakpoints) | set(a1.breakpoints) | set(a2.breakpoints))

    def c0_many(xs, order):
        j0 = Jet._raw(a0.evaluate_many(xs, order + 2))
        j1 = Jet._raw(a1.evaluate_many(xs, order + 2))
        j2 = Jet._raw(a2.evaluate_many(xs, order + 2))
        d01 = (j0 * j1).derivative(1).truncate(order)
        d02 = (j0 * j2).derivative(2)
        a0t = j0.truncate(order)
        return (d01 - d02 - a0t * a0t)._d

    def c1_many(xs, order):
        j0 = Jet._raw(a0.evaluate_many(xs, order + 1))
        j1 = Jet._raw(a1.evaluate_many(xs, order + 1))
        j2 = Jet._raw(a2.evaluate_many(xs, order + 1))
        d12 = (j1 * j2).derivative(1)
        a1t = j1.truncate(order)
        return (d12 - a1t * a1t + 2.0 * (j0.truncate(order) * j2.truncate(order)))._d

    dom = a0.domain
    return (
        SmoothMap(c0_many, dom, bps, name="c[2,0]"),
        SmoothMap(c1_many, dom, bps, name="c[2,1]"),
    )


# --- nonnegativity scanning ---------------------------------------------------

#: default absolute slack when declaring a scanned minimum nonnegative
TOL_SCAN = 1e-10
#: endpoint margin for finite domains, as a fraction of the length
ENDPOINT_MARGIN = 1e-4
#: scan window clip for half-infinite domains
SEMI_INF_WINDOW = (1e-3, 1e3)


@dataclass(frozen=True)
class ScanRecord:
    m: int
    min_value: float
    argmin: float
    nonnegative: bool


@dataclass(frozen=True)
class ScanReport:
    window: tuple
    grid_size: int
    tol: float
    records: tuple
    all_nonnegative: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self, "all_nonnegative", all(r.nonnegative for r in self.records)
        )

    def first_violation(self):
        for r in self.records:
            if not r.nonnegative:
                return r
        return None


def scan_window(domain):
    """Scan interval derived from the domain per the default margin policy."""
    a, b = domain
    lo_cap, hi_cap = SEMI_INF_WINDOW
    if math.isinf(a) and math.isinf(b):
        return (-hi_cap, hi_cap)
    if math.isinf(b):
        return (max(a + lo_cap, lo_cap if a == 0 else a + lo_cap), hi_cap)
    if math.isinf(a):
        return (-hi_cap, b - lo_cap)
    margin = ENDPOINT_MARGIN * (b - a)
    return (a + margin, b - margin)


def scan_nonnegativity(weights, grid=2000, tol=TOL_SCAN, window=None, refine=True):
    """Grid scan of every weight for nonnegativity, with local refinement.

    This is numerical evidence, not a proof: it reports per-weight minima over
    the window and flags any value below -tol.
    """
    lo, hi = window if window is not None else scan_window(weights.domain)
    xs = np.linspace(lo, hi, grid)
    keep = np.ones(grid, dtype=bool)
    for p in weights.breakpoints:
        keep &= np.abs(xs - p) > 1e-12 * max(1.0, abs(hi - lo))
    xs = xs[keep]
    records = []
    for m, cmap in enumerate(weights.c):
        vals = cmap.values(xs)
        i = int(np.argmin(vals))
        x_best, v_best = float(xs[i]), float(vals[i])
        if refine and 0 < i < len(xs) - 1:
            span_ok = all(
                not (xs[i - 1] < p < xs[i + 1]) for p in weights.breakpoints
            )
            if span_ok:
                x_ref, v_ref = golden_min(
                    lambda t, cm=cmap: cm.value(t), float(xs[i - 1]), float(xs[i + 1])
                )
                if v_ref < v_best:
                    x_best, v_best = x_ref, v_ref
        records.append(
            ScanRecord(m=m, min_value=v_best, argmin=x_best, nonnegative=v_best >= -tol)
        )
    return ScanReport(window=(lo, hi), grid_size=grid, tol=tol, records=tuple(records))
