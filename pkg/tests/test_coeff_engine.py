import math

import numpy as np
import pytest

from opineq import coeff_engine as ce
from opineq import exprlang as E
from opineq.errors import DomainError
from opineq.jets import constant_map


def hardy_system(gamma):
    dom = (0.0, math.inf)
    a0 = E.compile("((gamma-1)/2)*x^(gamma/2-1)", {"gamma": gamma}, dom)
    a1 = E.compile("x^(gamma/2)", {"gamma": gamma}, dom)
    return ce.make_system([a0, a1])


def test_hardy_value():
    w = ce.derive_weights(hardy_system(0.0))
    assert math.isclose(w.c[0].value(2.0), 1.0 / 16.0, rel_tol=1e-12)


def test_zero_coefficient_gives_zero_weight():
    dom = (0.0, 10.0)
    zero = constant_map(0.0, dom)
    a1 = E.compile("x^2 + 1", {}, dom)
    w = ce.derive_weights(ce.make_system([zero, a1]))
    xs = np.linspace(0.5, 9.0, 40)
    assert np.max(np.abs(w.c[0].values(xs))) == 0.0


@pytest.mark.parametrize("gamma", [-2.0, 0.0, 1.0, 3.0])
def test_power_family_closed_form(gamma, rng):
    w = ce.derive_weights(hardy_system(gamma))
    xs = rng.uniform(0.05, 50.0, 100)
    got = w.c[0].values(xs)
    want = ((1.0 - gamma) ** 2 / 4.0) * xs ** (gamma - 2.0)
    assert np.max(np.abs(got - want) / (1.0 + np.abs(want))) < 1e-12


def test_rellich_optimal_pair():
    al = 2.0 + math.sqrt(2.5)
    be = al * (1.0 - al) / 2.0
    dom = (0.0, math.inf)
    a0 = E.compile("beta*x^(gamma/2-2)", {"gamma": 0.0, "beta": be}, dom)
    a1 = E.compile("alpha*x^(gamma/2-1)", {"gamma": 0.0, "alpha": al}, dom)
    a2 = E.compile("-x^(gamma/2)", {"gamma": 0.0}, dom)
    w = ce.derive_weights(ce.make_system([a0, a1, a2]))
    xs = np.linspace(0.2, 20.0, 60)
    assert np.max(np.abs(w.c[1].values(xs))) <= 1e-10
    assert abs(w.c[0].value(1.0) - 9.0 / 16.0) <= 1e-9


_RANDOM_COEFFS = (
    "0.3*x^2 - x + 2",
    "sin(x) + 2",
    "exp(x/3)",
    "cos(x)/(x + 1)",
    "x*tanh(x) + 0.5",
    "sqrt(x + 2)",
)


def _random_system(rng, n):
    dom = (0.5, 3.0)
    picks = rng.choice(len(_RANDOM_COEFFS), size=n + 1, replace=False)
    maps = [E.compile(_RANDOM_COEFFS[i], {}, dom) for i in picks]
    return ce.make_system(maps)


@pytest.mark.parametrize("trial", range(6))
def test_first_order_specialization_matches_general(trial, rng):
    sys_ = _random_system(np.random.default_rng(1000 + trial), 1)
    w = ce.derive_weights(sys_)
    direct = ce.specialize_first_order(sys_.a[0], sys_.a[1])
    xs = rng.uniform(0.6, 2.9, 25)
    a = w.c[0].values(xs)
    b = direct.values(xs)
    assert np.max(np.abs(a - b) / (1.0 + np.abs(a))) < 1e-12


@pytest.mark.parametrize("trial", range(6))
def test_second_order_specialization_matches_general(trial, rng):
    sys_ = _random_system(np.random.default_rng(2000 + trial), 2)
    w = ce.derive_weights(sys_)
    c0, c1 = ce.specialize_second_order(*sys_.a)
    xs = rng.uniform(0.6, 2.9, 25)
    for got, want in ((c0, w.c[0]), (c1, w.c[1])):
        a, b = got.values(xs), want.values(xs)
        assert np.max(np.abs(a - b) / (1.0 + np.abs(b))) < 1e-12


def test_pruned_lower_bound_changes_nothing(rng):
    sys_ = _random_system(rng, 2)
    xs = rng.uniform(0.6, 2.9, 30)
    full = ce.derive_weights(sys_, pruned=False)
    pruned = ce.derive_weights(sys_, pruned=True)
    for m in range(2):
        assert np.array_equal(full.c[m].values(xs), pruned.c[m].values(xs))


def test_weights_reevaluate_identically(rng):
    w = ce.derive_weights(hardy_system(1.5))
    xs = rng.uniform(0.1, 5.0, 20)
    assert np.array_equal(w.c[0].values(xs), w.c[0].values(xs))


def test_trig_examples():
    dom = (0.0, math.pi)
    a0 = E.compile("-cot(x)", {}, dom)
    a1 = constant_map(1.0, dom)
    a2 = constant_map(1.0, dom)
    beta = 0.4
    c0, c1 = ce.specialize_second_order(constant_map(beta, dom), a0, a2)
    xs = np.linspace(0.3, math.pi - 0.3, 30)
    assert np.allclose(c1.values(xs), 2 * beta + 1, rtol=1e-12)
    assert np.allclose(c0.values(xs), beta / np.sin(xs) ** 2 - beta**2, rtol=1e-11)


def test_lhs_weight_is_square():
    w = ce.derive_weights(hardy_system(3.0))
    assert math.isclose(w.lhs_weight.value(2.0), 2.0**3, rel_tol=1e-13)


# --- scans ----------------------------------------------------------------------

def test_scan_hardy_positive():
    w = ce.derive_weights(hardy_system(0.0))
    rep = ce.scan_nonnegativity(w, grid=800)
    assert rep.all_nonnegative
    assert rep.records[0].min_value > 0.0


def test_scan_trig_weight_negative_alpha_minus_five():
    dom = (0.0, math.pi)
    a0 = E.compile("alpha*cot(x)", {"alpha": -5.0}, dom)
    a1 = E.compile("1/sin(x)", {}, dom)
    w = ce.derive_weights(ce.make_system([a0, a1]))
    rep = ce.scan_nonnegativity(w, grid=1000)
    assert not rep.all_nonnegative
    bad = rep.first_violation()
    assert bad.min_value < -1e-3
    assert 0.0 < bad.argmin < math.pi


def test_scan_trig_weight_alpha_zero_is_identically_zero():
    dom = (0.0, math.pi)
    a0 = constant_map(0.0, dom)
    a1 = E.compile("1/sin(x)", {}, dom)
    w = ce.derive_weights(ce.make_system([a0, a1]))
    rep = ce.scan_nonnegativity(w, grid=400)
    assert rep.all_nonnegative
    assert abs(rep.records[0].min_value) <= 1e-12


def test_scan_windows():
    assert ce.scan_window((0.0, math.inf)) == (1e-3, 1e3)
    lo, hi = ce.scan_window((1.0, 3.0))
    assert math.isclose(lo, 1.0 + 2e-4) and math.isclose(hi, 3.0 - 2e-4)


def test_breakpoint_evaluation_rejected():
    dom = (0.0, 1.0)
    a0 = E.compile("dist(0, 1, x)", {}, dom)
    a1 = constant_map(1.0, dom)
    w = ce.derive_weights(ce.make_system([a0, a1]))
    assert w.breakpoints == (0.5,)
    with pytest.raises(DomainError):
        w.c[0].value(0.5)


def test_jet_order_overflow_reported():
    w = ce.derive_weights(hardy_system(0.0))
    with pytest.raises(DomainError):
        w.c[0].evaluate(1.0, 16)
