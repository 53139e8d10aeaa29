"""Named inequality instances and their parameter optimizers.

Each entry builds a concrete coefficient tuple (a_0, ..., a_n) on its
documented domain, knows the closed-form weights where they exist, and
carries the admissible parameter ranges inside which every derived weight is
nonnegative. Entries outside their admissible range are still constructible
on purpose: the scanners are expected to flag them (negative testing).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import exprlang, specials
from .coeff_engine import derive_weights, make_system
from .errors import DomainError
from .jets import Jet, SmoothMap, log as jet_log, pow_int, sqrt as jet_sqrt
from .optimize import golden_min, poly_fit_coeffs, quad_vertex


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n: int
    description: str
    defaults: dict
    domain: callable
    build: callable
    expected: callable        # params -> tuple of (vectorized callable | None)
    admissible: callable      # params -> bool
    notes: str = ""


@dataclass(frozen=True)
class InequalityInstance:
    entry_id: str
    params: dict
    system: object
    weights: object
    admissible: bool
    expected_weights: tuple
    notes: str


_REGISTRY = {}


def _register(entry):
    _REGISTRY[entry.id] = entry
    return entry


def catalog_ids():
    return sorted(_REGISTRY)


def get_entry(entry_id):
    if entry_id not in _REGISTRY:
        raise ValueError(f"unknown catalog id {entry_id!r} (see `catalog list`)")
    return _REGISTRY[entry_id]


def instantiate(entry_id, params=None, **overrides):
    """Build a named instance; unknown parameter names are rejected."""
    entry = get_entry(entry_id)
    p = dict(entry.defaults)
    for src in (params or {}), overrides:
        for k, v in src.items():
            if k not in p:
                raise ValueError(
                    f"{entry_id}: unknown parameter {k!r} (have {sorted(p)})"
                )
            p[k] = v
    system = entry.build(p)
    weights = derive_weights(system)
    return InequalityInstance(
        entry_id=entry_id,
        params=p,
        system=system,
        weights=weights,
        admissible=entry.admissible(p),
        expected_weights=entry.expected(p),
        notes=entry.notes,
    )


def _compile(src, params, domain, breakpoints=()):
    return exprlang.compile(src, params, domain, breakpoints)


# --- first-order power/log/Bessel family ---------------------------------------

_register(CatalogEntry(
    id="hardy_power",
    n=1,
    description="power-weighted first-derivative inequality on (0, inf)",
    defaults={"gamma": 0.0},
    domain=lambda p: (0.0, math.inf),
    build=lambda p: make_system([
        _compile("((gamma-1)/2)*x^(gamma/2-1)", p, (0.0, math.inf)),
        _compile("x^(gamma/2)", p, (0.0, math.inf)),
    ]),
    expected=lambda p: (
        lambda xs, g=p["gamma"]: ((1 - g) ** 2 / 4.0) * xs ** (g - 2.0),
    ),
    admissible=lambda p: True,
    notes="weight ((1-gamma)^2/4) x^(gamma-2); constant sharp for every gamma",
))


def _interval_k(p):
    return math.pi / math.log(p["b"] / p["a"])


_register(CatalogEntry(
    id="hardy_interval",
    n=1,
    description="power weight on a finite interval; constant gains pi^2/ln(b/a)^2",
    defaults={"gamma": 0.0, "a": 1.0, "b": math.e},
    domain=lambda p: (p["a"], p["b"]),
    build=lambda p: make_system([
        _compile(
            "-x^(gamma/2-1)*((1-gamma)/2 + K*cot(K*ln(x/a)))",
            {**p, "K": _interval_k(p)},
            (p["a"], p["b"]),
        ),
        _compile("x^(gamma/2)", p, (p["a"], p["b"])),
    ]),
    expected=lambda p: (
        lambda xs, g=p["gamma"], k=_interval_k(p): ((1 - g) ** 2 / 4.0 + k * k)
        * xs ** (g - 2.0),
    ),
    admissible=lambda p: 0.0 < p["a"] < p["b"] < math.inf,
    notes="from u = x^((1-gamma)/2) sin(K ln(x/a)), the widest positive solution",
))


def _log_product_terms(n_terms):
    prods = []
    for k in range(1, n_terms + 1):
        factors = "*".join(f"ln_p({p}, eta/x)" for p in range(1, k + 1))
        prods.append(f"1/({factors})")
    return " + ".join(prods)


def _hardy_log_a0_src(n_terms):
    return f"x^(gamma/2-1)*(-(1-gamma)/2 + 0.5*({_log_product_terms(n_terms)}))"


def _hardy_log_expected(p):
    g, eta, n_terms = p["gamma"], p["eta"], int(p["N"])

    def closed(xs):
        acc = np.full_like(xs, (1 - g) ** 2)
        prod = np.ones_like(xs)
        lk = eta / xs
        for _ in range(n_terms):
            lk = np.log(lk)
            prod = prod * lk**-2
            acc = acc + prod
            # next iterate takes log of the current one
        return 0.25 * xs ** (g - 2.0) * acc

    return (closed,)


def _hardy_log_defaults():
    return {"gamma": 0.0, "N": 1, "R": 1.0, "eta": specials.iter_exp(1) * 1.0}


_register(CatalogEntry(
    id="hardy_log",
    n=1,
    description="iterated-logarithm refinement of the power weight on (0, R)",
    defaults=_hardy_log_defaults(),
    domain=lambda p: (0.0, p["R"]),
    build=lambda p: make_system([
        _compile(_hardy_log_a0_src(int(p["N"])), p, (0.0, p["R"])),
        _compile("x^(gamma/2)", p, (0.0, p["R"])),
    ]),
    expected=_hardy_log_expected,
    admissible=lambda p: p["eta"] >= specials.iter_exp(int(p["N"])) * p["R"] - 1e-12
    and int(p["N"]) >= 1,
    notes="weights stack 1/prod(ln_p(eta/x)^2); admissible for eta >= e_N R",
))


def _hardy_bessel_a0(p):
    g, mu, nu, b = p["gamma"], p["mu"], p["nu"], p["b"]
    s = 0.5 * (2.0 + mu - g)
    if s <= 0.0:
        raise DomainError(f"need 2+mu-gamma > 0, got {2 * s}")
    jnu1 = specials.bessel_zero(nu, 1)

    def fn_many(xs, order):
        xj = Jet.variable(xs, order + 1)
        w = jnu1 * (xj / b) ** s if not float(s).is_integer() else jnu1 * pow_int(xj / b, int(s))
        jw = specials.bessel_j_jet(nu, w)
        frac = jw.derivative(1) / jw.truncate(order)
        lead = (0.5 * (g - 1.0)) * xj.truncate(order) ** (0.5 * g - 1.0)
        xpow = xj.truncate(order) ** (0.5 * g) if g != 0.0 else Jet.constant(1.0, order, xs.shape[0])
        return (lead - xpow * frac)._d

    return SmoothMap(fn_many, (0.0, b), name="bessel-shifted power coefficient")


def _hardy_bessel_expected(p):
    g, mu, nu, b = p["gamma"], p["mu"], p["nu"], p["b"]
    s2 = 2.0 + mu - g
    jnu1 = specials.bessel_zero(nu, 1)
    c_pow = ((1 - g) ** 2 - s2**2 * nu**2) / 4.0
    c_bes = jnu1**2 * s2**2 / (4.0 * b**s2)
    return (lambda xs: c_pow * xs ** (g - 2.0) + c_bes * xs**mu,)


_register(CatalogEntry(
    id="hardy_bessel",
    n=1,
    description="power weight on (0, b) refined through the first Bessel zero",
    defaults={"gamma": 0.0, "mu": 0.0, "nu": 0.0, "b": 1.0},
    domain=lambda p: (0.0, p["b"]),
    build=lambda p: make_system([
        _hardy_bessel_a0(p),
        _compile("x^(gamma/2)", p, (0.0, p["b"])),
    ]),
    expected=_hardy_bessel_expected,
    admissible=lambda p: 2.0 + p["mu"] - p["gamma"] > 0.0
    and 0.0 <= p["nu"] < abs(1.0 - p["gamma"]) / (2.0 + p["mu"] - p["gamma"]),
    notes="x^(gamma-2) term positive only for nu < |1-gamma|/(2+mu-gamma)",
))


def dist_boundary_build(gamma, mu, nu, a, b):
    """Coefficient system for the distance-to-boundary weighted inequality.

    The positive solution is a Bessel profile in the distance variable on
    each half; the right-branch J/Y mix is fixed by matching value and slope
    at the midpoint numerically. With the coupling from the first zero of the
    mixed boundary function the slope there vanishes and the profile is the
    exact mirror of the left half (tested as an invariant).
    """
    s = 0.5 * (2.0 + mu - gamma)
    if s <= 0.0:
        raise DomainError(f"need 2+mu-gamma > 0, got {2 * s}")
    if not a < b:
        raise DomainError(f"empty interval ({a}, {b})")
    lam = specials.g_zero(gamma, mu, nu)
    h = 0.5 * (b - a)
    kappa = lam * h**-s  # sqrt(c)/s; Bessel argument is kappa * t^s
    mid = 0.5 * (a + b)
    expo = 0.5 * (1.0 - gamma)

    def branch(tjet, coef_j, coef_y):
        w = kappa * tjet**s if not float(s).is_integer() else kappa * pow_int(tjet, int(s))
        cyl = specials.bessel_jy_combo_jet(nu, w, coef_j, coef_y)
        return tjet**expo * cyl if expo != 0.0 else cyl

    # C^1 matching at the midpoint: value and slope of t -> h jets
    def edge(coef_j, coef_y, left):
        t = Jet.variable(mid, 1) - a if left else b - Jet.variable(mid, 1)
        u = branch(t, coef_j, coef_y)
        return u.deriv(0), u.deriv(1)

    uval, uder = edge(1.0, 0.0, left=True)
    jval, jder = edge(1.0, 0.0, left=False)
    yval, yder = edge(0.0, 1.0, left=False)
    mat = np.array([[jval, yval], [jder, yder]])
    if abs(np.linalg.det(mat)) < 1e-12 * np.abs(mat).max() ** 2:
        raise DomainError("midpoint matching system is singular")
    coef_a, coef_b = np.linalg.solve(mat, np.array([uval, uder]))

    def a0_many(xs, order):
        out = np.empty((order + 1, xs.shape[0]))
        left = xs <= mid
        for mask, is_left in ((left, True), (~left, False)):
            if not mask.any():
                continue
            xj = Jet.variable(xs[mask], order + 1)
            t = (xj - a) if is_left else (b - xj)
            u = branch(t, 1.0, 0.0) if is_left else branch(t, coef_a, coef_b)
            frac = u.derivative(1) / u.truncate(order)
            tg = t.truncate(order)
            dpow = tg ** (0.5 * gamma) if gamma != 0.0 else Jet.constant(1.0, order, int(mask.sum()))
            out[:, mask] = (-(dpow * frac))._d
        return out

    dom = (float(a), float(b))
    prm = {"gamma": gamma, "a": a, "b": b}
    a0 = SmoothMap(a0_many, dom, (mid,), name="distance-profile coefficient")
    a1 = _compile("dist(a, b, x)^(gamma/2)", prm, dom)
    return make_system([a0, a1])


def _dist_expected(p):
    g, mu, nu, a, b = p["gamma"], p["mu"], p["nu"], p["a"], p["b"]
    s2 = 2.0 + mu - g
    lam = specials.g_zero(g, mu, nu)
    h = 0.5 * (b - a)
    c_pow = ((1 - g) ** 2 - s2**2 * nu**2) / 4.0
    c_bes = h ** (g - mu - 2.0) * s2**2 / 4.0 * lam**2

    def closed(xs):
        d = np.minimum(xs - a, b - xs)
        return c_pow * d ** (g - 2.0) + c_bes * d**mu

    return (closed,)


_register(CatalogEntry(
    id="dist_boundary",
    n=1,
    description="distance-to-boundary weights with a mixed-boundary Bessel constant",
    defaults={"gamma": 0.0, "mu": 0.0, "nu": 0.0, "a": 0.0, "b": 2.0},
    domain=lambda p: (p["a"], p["b"]),
    build=lambda p: dist_boundary_build(p["gamma"], p["mu"], p["nu"], p["a"], p["b"]),
    expected=_dist_expected,
    admissible=lambda p: 2.0 + p["mu"] - p["gamma"] > 0.0
    and 0.0 <= p["nu"] < abs(1.0 - p["gamma"]) / (2.0 + p["mu"] - p["gamma"]),
    notes="piecewise profile mirrored at the midpoint; breakpoint at (a+b)/2",
))


def _log_weight_a0(p):
    eta, big_r = p["eta"], p["R"]
    c_sqrt = specials.bessel_zero(0.0, 1) / big_r

    def fn_many(xs, order):
        xj = Jet.variable(xs, order + 1)
        lg = math.log(eta) - jet_log(xj)
        u = jet_sqrt(xj) * jet_sqrt(lg) * specials.bessel_j_jet(0.0, c_sqrt * xj)
        frac = u.derivative(1) / u.truncate(order)
        a1 = lg.truncate(order) ** -0.5
        return (-(a1 * frac))._d

    return SmoothMap(fn_many, (0.0, big_r), name="log-weight coefficient")


def _log_weight_expected(p):
    eta, big_r = p["eta"], p["R"]
    j01 = specials.bessel_zero(0.0, 1)

    def closed(xs):
        lg = np.log(eta / xs)
        return (lg**2 - 2.0 * lg + 3.0) / (4.0 * xs**2 * lg**3) + (
            j01**2 / big_r**2
        ) / lg

    return (closed,)


_register(CatalogEntry(
    id="log_weight",
    n=1,
    description="reciprocal-log weighted inequality on (0, R)",
    defaults={"R": 1.0, "eta": math.e},
    domain=lambda p: (0.0, p["R"]),
    build=lambda p: make_system([
        _log_weight_a0(p),
        _compile("ln(eta/x)^(-0.5)", p, (0.0, p["R"])),
    ]),
    expected=_log_weight_expected,
    admissible=lambda p: p["eta"] >= p["R"],
    notes="from u = sqrt(x ln(eta/x)) J_0(j01 x / R); all weights nonnegative for eta >= R",
))


# --- trigonometric/hyperbolic family --------------------------------------------

_register(CatalogEntry(
    id="trig_hardy",
    n=1,
    description="cotangent coefficient on (0, pi): constant + 1/sin^2 refinement",
    defaults={"alpha": -0.5},
    domain=lambda p: (0.0, math.pi),
    build=lambda p: make_system([
        _compile("alpha*cot(x)", p, (0.0, math.pi)),
        _compile("1", p, (0.0, math.pi)),
    ]),
    expected=lambda p: (
        lambda xs, a=p["alpha"]: a * a - (a * a + a) / np.sin(xs) ** 2,
    ),
    admissible=lambda p: -1.0 <= p["alpha"] <= 0.0,
    notes="alpha in [-1, 0]; alpha = -1/2 maximizes the 1/sin^2 coefficient",
))

_register(CatalogEntry(
    id="trig_half",
    n=1,
    description="tan/cot mix on (0, pi/2): constant + csc^2 + sec^2 weights",
    defaults={"alpha": 0.5, "beta": 0.5},
    domain=lambda p: (0.0, 0.5 * math.pi),
    build=lambda p: make_system([
        _compile("alpha*tan(x) - beta*cot(x)", p, (0.0, 0.5 * math.pi)),
        _compile("1", p, (0.0, 0.5 * math.pi)),
    ]),
    expected=lambda p: (
        lambda xs, a=p["alpha"], b=p["beta"]: (a + b) ** 2
        + (b - b * b) / np.sin(xs) ** 2
        + (a - a * a) / np.cos(xs) ** 2,
    ),
    admissible=lambda p: 0.0 <= p["alpha"] <= 1.0 and 0.0 <= p["beta"] <= 1.0,
    notes="alpha = beta = 1/2 maximizes both singular weights",
))

_register(CatalogEntry(
    id="hyperbolic",
    n=1,
    description="tanh/coth mix on (0, inf): sech^2 + csch^2 weights",
    defaults={"alpha": 0.5, "beta": 0.5},
    domain=lambda p: (0.0, math.inf),
    build=lambda p: make_system([
        _compile("alpha*tanh(x) - beta*coth(x)", p, (0.0, math.inf)),
        _compile("1", p, (0.0, math.inf)),
    ]),
    expected=lambda p: (
        # clip the argument: both terms underflow to 0 long before 350
        lambda xs, a=p["alpha"], b=p["beta"]: -((a - b) ** 2)
        + (a + a * a) / np.cosh(np.minimum(xs, 350.0)) ** 2
        + (b - b * b) / np.sinh(np.minimum(xs, 350.0)) ** 2,
    ),
    admissible=lambda p: p["alpha"] == p["beta"] and 0.0 <= p["beta"] <= 1.0,
    notes="constant term -(alpha-beta)^2 forces alpha = beta for nonnegativity",
))

_register(CatalogEntry(
    id="trig_weight",
    n=1,
    description="cosecant-weighted derivative on (0, pi)",
    defaults={"alpha": -2.0},
    domain=lambda p: (0.0, math.pi),
    build=lambda p: make_system([
        _compile("alpha*cot(x)", p, (0.0, math.pi)),
        _compile("1/sin(x)", p, (0.0, math.pi)),
    ]),
    expected=lambda p: (
        lambda xs, a=p["alpha"]: -a
        * (2.0 / np.sin(xs) ** 3 + a / np.sin(xs) ** 2 - 1.0 / np.sin(xs) - a),
    ),
    admissible=lambda p: trig_alpha_range()[0] <= p["alpha"] <= 0.0,
    notes="admissible alpha range has an algebraic lower endpoint near -4.1995",
))

_register(CatalogEntry(
    id="power_trig",
    n=1,
    description="power weight with cotangent coefficient on (0, 1)",
    defaults={"alpha": -0.5, "gamma": -1.0},
    domain=lambda p: (0.0, 1.0),
    build=lambda p: make_system([
        _compile("alpha*cot(x)", p, (0.0, 1.0)),
        _compile("x^(gamma/2)", p, (0.0, 1.0)),
    ]),
    expected=lambda p: (
        lambda xs, a=p["alpha"], g=p["gamma"]: a * a
        - a * (a + xs ** (g / 2.0)) / np.sin(xs) ** 2
        + (a * g / 2.0) * xs ** (g / 2.0 - 1.0) / np.tan(xs),
    ),
    admissible=lambda p: -1.0 <= p["alpha"] <= 0.0 and p["gamma"] <= 0.0,
    notes="each term separately nonnegative for alpha in [-1,0], gamma <= 0",
))


# --- second-order family ---------------------------------------------------------

def rellich_beta(alpha, gamma_):
    """The coupling that kills the first-derivative weight."""
    return alpha * (1.0 - alpha - gamma_) / 2.0


def _rellich_defaults():
    ap, _, _ = rellich_alpha_closed(0.0)
    return {"gamma": 0.0, "alpha": ap, "beta": rellich_beta(ap, 0.0)}


def rellich_alpha_closed(gamma_):
    """Closed-form maximizers and value: alpha_pm = 2-gamma +- sqrt(((gamma-2)^2+1)/2)."""
    root = math.sqrt(((gamma_ - 2.0) ** 2 + 1.0) / 2.0)
    return 2.0 - gamma_ + root, 2.0 - gamma_ - root, ((gamma_ - 1.0) * (gamma_ - 3.0) / 4.0) ** 2


def rellich_objective(gamma_):
    """F(alpha): the zeroth-order constant once beta = alpha(1-alpha-gamma)/2."""

    def f(alpha):
        return (
            alpha
            * (1.0 - alpha - gamma_)
            * (
                alpha * (gamma_ - 3.0)
                - (alpha / 2.0) * (1.0 - alpha - gamma_)
                + (gamma_ - 2.0) * (gamma_ - 3.0)
            )
            / 2.0
        )

    return f


def optimize_rellich_alpha(gamma_):
    """Numeric maximizers of the second-order constant, with the closed form
    as an internal cross-check.

    Returns (alpha_plus, alpha_minus, constant).
    """
    f = rellich_objective(gamma_)
    coeffs = poly_fit_coeffs(f, 4, center=2.0 - gamma_, spread=1.0)
    deriv = np.polynomial.Polynomial(coeffs).deriv()
    roots = deriv.roots()
    real = sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9)
    maxima = sorted((a for a in real if deriv.deriv()(a) < 0.0), key=f, reverse=True)
    if len(maxima) < 2:
        raise RuntimeError(f"expected two maxima, found {maxima}")
    a_hi, a_lo = sorted(maxima[:2], reverse=True)
    value = f(a_hi)
    cp, cm, cv = rellich_alpha_closed(gamma_)
    if abs(a_hi - cp) > 1e-8 or abs(a_lo - cm) > 1e-8 or abs(value - cv) > 1e-8 * (1 + cv):
        raise RuntimeError(
            f"optimizer disagrees with closed form: {(a_hi, a_lo, value)} vs {(cp, cm, cv)}"
        )
    return a_hi, a_lo, value


_register(CatalogEntry(
    id="rellich_power",
    n=2,
    description="power-weighted second-derivative inequality on (0, inf)",
    defaults=_rellich_defaults(),
    domain=lambda p: (0.0, math.inf),
    build=lambda p: make_system([
        _compile("beta*x^(gamma/2-2)", p, (0.0, math.inf)),
        _compile("alpha*x^(gamma/2-1)", p, (0.0, math.inf)),
        _compile("-x^(gamma/2)", p, (0.0, math.inf)),
    ]),
    expected=lambda p: (
        lambda xs, a=p["alpha"], b=p["beta"], g=p["gamma"]: (
            -b * b + a * b * (g - 3.0) + b * (g - 2.0) * (g - 3.0)
        )
        * xs ** (g - 4.0),
        lambda xs, a=p["alpha"], b=p["beta"], g=p["gamma"]: (
            -a * a - a * (g - 1.0) - 2.0 * b
        )
        * xs ** (g - 2.0),
    ),
    admissible=lambda p: (
        -p["alpha"] ** 2 - p["alpha"] * (p["gamma"] - 1.0) - 2.0 * p["beta"] >= -1e-12
        and -p["beta"] ** 2
        + p["alpha"] * p["beta"] * (p["gamma"] - 3.0)
        + p["beta"] * (p["gamma"] - 2.0) * (p["gamma"] - 3.0)
        >= -1e-12
    ),
    notes="beta = alpha(1-alpha-gamma)/2 zeroes the first-derivative weight; "
    "alpha_pm then maximize the constant [(gamma-1)(gamma-3)/4]^2",
))

_register(CatalogEntry(
    id="rellich_trig",
    n=2,
    description="second-order trigonometric inequality on (0, pi)",
    defaults={"beta": 0.5},
    domain=lambda p: (0.0, math.pi),
    build=lambda p: make_system([
        _compile("beta", p, (0.0, math.pi)),
        _compile("-cot(x)", p, (0.0, math.pi)),
        _compile("1", p, (0.0, math.pi)),
    ]),
    expected=lambda p: (
        lambda xs, b=p["beta"]: b / np.sin(xs) ** 2 - b * b,
        lambda xs, b=p["beta"]: np.full_like(xs, 2.0 * b + 1.0),
    ),
    admissible=lambda p: 0.0 <= p["beta"] <= 1.0,
    notes="first-derivative weight is the constant 2 beta + 1",
))


# --- parameter optimizers ---------------------------------------------------------

def trig_alpha_closed_lower():
    """Algebraic lower endpoint of the cosecant-weight admissible range."""
    r17 = math.sqrt(17.0)
    return -0.25 * (4.0 * math.sqrt(5.0 + r17) + math.sqrt(14.0 + 2.0 * r17))


def _trig_weight_min(alpha, grid=4000):
    """min over (0, pi) of the cosecant-family weight at a given alpha."""
    inst_f = lambda xs: -alpha * (
        2.0 / np.sin(xs) ** 3 + alpha / np.sin(xs) ** 2 - 1.0 / np.sin(xs) - alpha
    )
    xs = np.linspace(1e-4, math.pi - 1e-4, grid)
    vals = inst_f(xs)
    i = int(np.argmin(vals))
    lo = xs[max(i - 1, 0)]
    hi = xs[min(i + 1, grid - 1)]
    _, v = golden_min(lambda t: float(inst_f(np.array([t]))[0]), float(lo), float(hi))
    return min(float(vals[i]), v)


def trig_alpha_range(method="closed", tol=1e-8):
    """Admissible alpha interval (lower, 0.0) for the cosecant-weight family.

    method="closed" evaluates the algebraic endpoint; "numeric" bisects on
    alpha with an inner minimization over x, independent of the closed form.
    """
    if method == "closed":
        return (trig_alpha_closed_lower(), 0.0)
    if method != "numeric":
        raise ValueError(f"unknown method {method!r}")
    lo, hi = -6.0, -3.0  # min is negative at -6, positive at -3
    if _trig_weight_min(lo) >= 0.0 or _trig_weight_min(hi) < 0.0:
        raise RuntimeError("bisection bracket for the alpha endpoint failed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _trig_weight_min(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return (0.5 * (lo + hi), 0.0)


def optimize_simple(family, gamma_=0.0):
    """Quadratic one-parameter optimizations, solved as exact parabola vertices.

    Families: "hardy_power_alpha" minimizes alpha(alpha+1-gamma);
    "trig_hardy_alpha" minimizes alpha(alpha+1); "hyperbolic_beta" maximizes
    beta - beta^2. Returns (argopt, optimal value of the family objective).
    """
    if family == "hardy_power_alpha":
        x, v = quad_vertex(lambda a: a * (a + 1.0 - gamma_))
        return x, v
    if family == "trig_hardy_alpha":
        x, v = quad_vertex(lambda a: a * (a + 1.0))
        return x, v
    if family == "hyperbolic_beta":
        x, v = quad_vertex(lambda b: -(b - b * b))
        return x, -v
    raise ValueError(f"unknown family {family!r}")
