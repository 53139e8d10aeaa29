import math

import numpy as np
import pytest

from opineq import coeff_engine as ce
from opineq import exprlang as E
from opineq import verifier as V
from opineq.errors import QuadratureError
from opineq.jets import Jet, SmoothMap, bump_many, log as jet_log, sqrt as jet_sqrt


def hardy_weights(gamma=0.0):
    dom = (0.0, math.inf)
    a0 = E.compile("((gamma-1)/2)*x^(gamma/2-1)", {"gamma": gamma}, dom)
    a1 = E.compile("x^(gamma/2)", {"gamma": gamma}, dom)
    return ce.derive_weights(ce.make_system([a0, a1]))


# --- quadrature -----------------------------------------------------------------

def test_monomial_integral():
    val, err = V.integrate(lambda xs: xs**2, (0.0, 1.0))
    assert abs(val - 1.0 / 3.0) <= 1e-14
    assert err <= 1e-12


def test_bump_integral_two_independent_schemes():
    """Adaptive panels vs scipy.quad vs plain midpoint-Romberg."""
    from scipy.integrate import quad

    f = lambda xs: bump_many(0.0, 1.0, np.atleast_1d(xs), 0)[0]
    val, _ = V.integrate(f, (0.0, 1.0))
    ref_scipy, _ = quad(lambda x: float(f(np.array([x]))[0]), 0.0, 1.0, epsabs=1e-13)
    # composite-midpoint refinement as a second independent scheme
    acc = []
    for k in (12, 13, 14):
        n = 2**k
        xs = (np.arange(n) + 0.5) / n
        acc.append(np.mean(f(xs)))
    assert abs(val - ref_scipy) <= 1e-11
    assert abs(val - acc[-1]) <= 1e-7
    assert abs(val - 0.2219969080840394) <= 1e-12  # frozen from the two oracles


def test_breakpoint_additivity():
    f = lambda xs: np.exp(xs)
    whole, _ = V.integrate(f, (0.0, 1.0), breakpoints=(0.5,))
    left, _ = V.integrate(f, (0.0, 0.5))
    right, _ = V.integrate(f, (0.5, 1.0))
    assert abs(whole - (left + right)) <= 1e-13


def test_tolerance_self_consistency():
    f = lambda xs: np.sin(7.0 * xs) ** 2 / (1.0 + xs)
    v1, e1 = V.integrate(f, (0.0, 3.0), tol=1e-8)
    v2, _ = V.integrate(f, (0.0, 3.0), tol=5e-9)
    assert abs(v2 - v1) <= max(e1, 1e-14)


def test_step_function_still_integrates():
    # a bounded jump is absorbed: straddling panels shrink until the jump
    # falls inside the node-free edge gap
    f = lambda xs: np.sign(xs - 1.0 / 3.0)
    v, _ = V.integrate(f, (0.0, 1.0), tol=1e-12)
    assert abs(v - 1.0 / 3.0) <= 1e-10


def test_nonconvergence_reported():
    # non-integrable singularity: panels collapse without converging
    f = lambda xs: 1.0 / np.abs(xs - 1.0 / 3.0)
    with pytest.raises(QuadratureError) as err:
        V.integrate(f, (0.0, 1.0), tol=1e-10)
    lo, hi = err.value.panel
    assert abs(lo - 1.0 / 3.0) < 1e-6 and abs(hi - 1.0 / 3.0) < 1e-6


# --- test functions ----------------------------------------------------------------

def test_test_function_validation():
    with pytest.raises(ValueError):
        V.TestFunction(support=(1.0, 1.0), coefficients=(1.0,))
    with pytest.raises(ValueError):
        V.TestFunction(support=(0.0, 1.0), coefficients=(0.0, 0.0))
    with pytest.raises(ValueError):
        V.TestFunction(support=(0.0, 1.0), coefficients=(1.0,) * 14)


def test_corpus_deterministic():
    a = V.random_test_functions((0.0, math.pi), 8, seed=3)
    b = V.random_test_functions((0.0, math.pi), 8, seed=3)
    assert [(f.support, f.coefficients) for f in a] == [
        (f.support, f.coefficients) for f in b
    ]


def test_supports_inside_domain():
    for dom in ((0.0, math.inf), (0.0, 1.0), (1.0, math.e), (-math.inf, 0.0)):
        for f in V.random_test_functions(dom, 12, seed=5):
            l, r = f.support
            assert dom[0] < l < r < dom[1]


def test_test_function_vanishes_outside_support():
    f = V.TestFunction(support=(1.0, 2.0), coefficients=(0.3, -0.7))
    d = f.evaluate_many(np.array([0.5, 1.0, 2.0, 2.5]), 3)
    assert np.all(d == 0.0)


# --- instance evaluation --------------------------------------------------------------

def test_trivial_system_identity():
    # a_0 = 0: no rhs, residual equals lhs exactly
    dom = (0.0, 10.0)
    from opineq.jets import constant_map

    sys_ = ce.make_system([constant_map(0.0, dom), constant_map(1.0, dom)])
    w = ce.derive_weights(sys_)
    f = V.TestFunction(support=(2.0, 4.0), coefficients=(1.0, 0.2))
    rep = V.evaluate_instance(w, f)
    assert rep.rhs_terms == (0.0,)
    assert abs(rep.lhs - rep.residual_direct) <= 1e-12 * (1 + rep.lhs)
    assert rep.identity_ok and rep.margin_ok


def test_hardy_identity_and_margin():
    w = hardy_weights(0.0)
    f = V.TestFunction(support=(1.0, 2.0), coefficients=(1.0,))
    rep = V.evaluate_instance(w, f)
    assert rep.identity_gap <= 1e-8 * (1.0 + rep.residual_direct)
    assert rep.margin >= 0.0
    assert rep.residual_direct >= -1e-12


def test_rellich_corpus():
    al = 2.0 + math.sqrt(2.5)
    be = al * (1.0 - al) / 2.0
    dom = (0.0, math.inf)
    a0 = E.compile("beta*x^(-2)", {"beta": be}, dom)
    a1 = E.compile("alpha*x^(-1)", {"alpha": al}, dom)
    a2 = E.compile("-1", {}, dom)
    w = ce.derive_weights(ce.make_system([a0, a1, a2]))
    rep = V.verify_corpus(w, corpus=6, seed=11)
    assert rep.passed


def test_scaling_covariance():
    w = hardy_weights(0.0)
    base = V.TestFunction(support=(1.0, 2.0), coefficients=(0.5, 0.3))
    scaled = V.TestFunction(support=(1.0, 2.0), coefficients=(1.5, 0.9))
    r1 = V.evaluate_instance(w, base)
    r3 = V.evaluate_instance(w, scaled)
    assert math.isclose(r3.lhs, 9.0 * r1.lhs, rel_tol=1e-10)
    assert math.isclose(r3.residual_direct, 9.0 * r1.residual_direct, rel_tol=1e-10)
    for a, b in zip(r3.rhs_terms, r1.rhs_terms):
        assert math.isclose(a, 9.0 * b, rel_tol=1e-10)


def test_support_outside_domain_rejected():
    w = hardy_weights(0.0)
    f = V.TestFunction(support=(-1.0, 2.0), coefficients=(1.0,))
    with pytest.raises(ValueError):
        V.evaluate_instance(w, f)


# --- Rayleigh probing --------------------------------------------------------------------

class LogBump:
    """sqrt(x) times a mollifier in log x: tracks the flat direction of the
    power-weight inequality, driving the Rayleigh ratio toward 1."""

    def __init__(self, t_lo, t_hi):
        self.support = (math.exp(t_lo), math.exp(t_hi))
        self._t = (t_lo, t_hi)

    def evaluate_many(self, xs, order):
        xs = np.asarray(xs, dtype=np.float64)
        xj = Jet.variable(xs, order)
        t = jet_log(xj)
        lo, hi = self._t
        half = 0.5 * (hi - lo)
        s = (t - 0.5 * (lo + hi)) / half
        inside = np.abs(np.atleast_1d(s.value)) < 1.0 - 1e-9
        out = np.zeros((order + 1, xs.shape[0]))
        if inside.any():
            xin = Jet._raw(np.ascontiguousarray(xj._d[:, inside]))
            tin = jet_log(xin)
            sin_ = (tin - 0.5 * (lo + hi)) / half
            from opineq.jets import exp as jet_exp

            m = jet_exp(-1.0 / (1.0 - sin_ * sin_))
            out[:, inside] = (jet_sqrt(xin) * m)._d
        return out


def test_rayleigh_single_bump_at_least_one():
    w = hardy_weights(0.0)
    best, ratios = V.rayleigh_probe(w, [V.TestFunction((1.0, 2.0), (1.0,))])
    assert best >= 1.0
    assert ratios == [best]


def test_rayleigh_decreases_toward_flat_direction():
    w = hardy_weights(0.0)
    family = [LogBump(-k, k) for k in (1.0, 2.0, 4.0, 8.0, 12.0)]
    best, ratios = V.rayleigh_probe(w, family)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert best == ratios[-1]
    assert best < 1.1  # wide log-bumps approach the sharp constant


def test_scaled_weights_detected_as_false():
    """Scaling the derived weight by 1.5 breaks the inequality; a wide
    log-bump exposes margin < 0 and ratio < 1."""
    w = hardy_weights(0.0)
    scaled_c = SmoothMap(
        lambda xs, order: 1.5 * w.c[0].evaluate_many(xs, order),
        w.domain,
        w.breakpoints,
        name="1.5 * c",
    )
    w_bad = ce.WeightSet(
        n=w.n,
        domain=w.domain,
        breakpoints=w.breakpoints,
        lhs_weight=w.lhs_weight,
        c=(scaled_c,),
        system=w.system,
    )
    probe = LogBump(-12.0, 12.0)
    rep = V.evaluate_instance(w_bad, probe)
    assert rep.margin < 0.0
    best, _ = V.rayleigh_probe(w_bad, [probe])
    assert best < 1.0


def test_degenerate_family_rejected():
    from opineq.jets import constant_map

    dom = (0.0, 10.0)
    sys_ = ce.make_system([constant_map(0.0, dom), constant_map(1.0, dom)])
    w = ce.derive_weights(sys_)
    with pytest.raises(ValueError):
        V.rayleigh_probe(w, [V.TestFunction((1.0, 2.0), (1.0,))])
