import math

import numpy as np
import pytest

from opineq import catalog as C
from opineq import verifier as V
from opineq.coeff_engine import scan_nonnegativity, scan_window
from opineq.optimize import golden_min


def closed_form_grid(inst, points=500):
    """Comparison grid: scan window with a 1e-3-of-length margin, keeping
    clear of coefficient poles that sit right at the window edge."""
    a, b = inst.weights.domain
    lo, hi = scan_window((a, b))
    if not math.isinf(b):
        pad = 1e-3 * (b - a)
        lo, hi = a + pad, b - pad
    xs = np.linspace(lo, hi, points)
    for p in inst.weights.breakpoints:
        xs = xs[np.abs(xs - p) > 1e-9 * (hi - lo)]
    return xs


@pytest.mark.parametrize("entry_id", C.catalog_ids())
def test_entry_matches_closed_form_weights(entry_id):
    inst = C.instantiate(entry_id)
    xs = closed_form_grid(inst)
    assert inst.admissible
    for m, fn in enumerate(inst.expected_weights):
        if fn is None:
            continue
        got = inst.weights.c[m].values(xs)
        want = fn(xs)
        err = np.max(np.abs(got - want) / (1.0 + np.abs(want)))
        assert err <= 1e-9, (entry_id, m, err)


@pytest.mark.parametrize("entry_id", C.catalog_ids())
def test_entry_scan_nonnegative_at_defaults(entry_id):
    inst = C.instantiate(entry_id)
    rep = scan_nonnegativity(inst.weights, grid=600)
    assert rep.all_nonnegative, rep.first_violation()


def test_instantiate_examples():
    inst = C.instantiate("hardy_power", gamma=0.0)
    xs = np.linspace(0.5, 5.0, 9)
    assert np.allclose(inst.weights.c[0].values(xs), 0.25 / xs**2, rtol=1e-12)

    inst = C.instantiate("trig_half", alpha=0.5, beta=0.5)
    xs = np.linspace(0.2, 1.3, 9)
    want = 1.0 + 0.25 / np.sin(xs) ** 2 + 0.25 / np.cos(xs) ** 2
    assert np.allclose(inst.weights.c[0].values(xs), want, rtol=1e-11)

    inst = C.instantiate("hyperbolic", alpha=0.5, beta=0.5)
    xs = np.linspace(0.3, 4.0, 9)
    want = 0.75 / np.cosh(xs) ** 2 + 0.25 / np.sinh(xs) ** 2
    assert np.allclose(inst.weights.c[0].values(xs), want, rtol=1e-11)


def test_instantiate_rejects_unknown_params():
    with pytest.raises(ValueError):
        C.instantiate("hardy_power", delta=1.0)
    with pytest.raises(ValueError):
        C.instantiate("no_such_entry")


# --- optimizers -----------------------------------------------------------------

@pytest.mark.parametrize("gamma", [0.0, 1.0, 5.0])
def test_rellich_alpha_matches_closed_form(gamma):
    ap, am, value = C.optimize_rellich_alpha(gamma)
    cp, cm, cv = C.rellich_alpha_closed(gamma)
    assert abs(ap - cp) <= 1e-8
    assert abs(am - cm) <= 1e-8
    assert abs(value - cv) <= 1e-8 * (1.0 + cv)


def test_rellich_constant_at_zero():
    _, _, value = C.optimize_rellich_alpha(0.0)
    assert abs(value - 9.0 / 16.0) <= 1e-10


def test_rellich_objective_vs_golden_section():
    # independent check of the polynomial optimizer on one branch
    g = 5.0
    f = C.rellich_objective(g)
    ap, _, _ = C.rellich_alpha_closed(g)
    x, _ = golden_min(lambda a: -f(a), ap - 0.8, ap + 0.8, tol=1e-12)
    assert abs(x - ap) <= 1e-7


def test_trig_alpha_range_closed_value():
    lo, hi = C.trig_alpha_range()
    assert hi == 0.0
    # decimal expansion starts -4.1995... (truncation, not rounding)
    assert int(lo * 1e4) / 1e4 == -4.1995
    r17 = math.sqrt(17.0)
    explicit = -0.25 * (4.0 * math.sqrt(5.0 + r17) + math.sqrt(14.0 + 2.0 * r17))
    assert lo == explicit


def test_trig_alpha_range_numeric_agrees():
    lo_c, _ = C.trig_alpha_range(method="closed")
    lo_n, _ = C.trig_alpha_range(method="numeric")
    assert abs(lo_c - lo_n) <= 1e-6


def test_trig_alpha_boundary_cases():
    inst = C.instantiate("trig_weight", alpha=0.0)
    xs = np.linspace(0.1, math.pi - 0.1, 50)
    assert np.max(np.abs(inst.weights.c[0].values(xs))) <= 1e-12
    assert C._trig_weight_min(-5.0) < -1e-2


@pytest.mark.parametrize(
    "family,gamma,argopt",
    [
        ("hardy_power_alpha", 3.0, 1.0),
        ("hardy_power_alpha", 0.0, -0.5),
        ("trig_hardy_alpha", 0.0, -0.5),
        ("hyperbolic_beta", 0.0, 0.5),
    ],
)
def test_optimize_simple(family, gamma, argopt):
    x, _ = C.optimize_simple(family, gamma)
    assert abs(x - argopt) <= 1e-12


# --- distance-to-boundary entry ------------------------------------------------------

def test_dist_boundary_profile_is_mirror_symmetric():
    inst = C.instantiate("dist_boundary")
    a, b = inst.params["a"], inst.params["b"]
    a0 = inst.system.a[0]
    xs = np.linspace(a + 0.05, 0.5 * (a + b) - 0.05, 25)
    left = a0.values(xs)
    right = a0.values(a + b - xs)
    # u(x) = u(a+b-x) forces a0 antisymmetric about the midpoint
    assert np.max(np.abs(left + right)) <= 1e-8


def test_dist_boundary_weights_symmetric():
    inst = C.instantiate("dist_boundary")
    a, b = inst.params["a"], inst.params["b"]
    xs = np.linspace(a + 0.07, 0.5 * (a + b) - 0.07, 19)
    w = inst.weights.c[0]
    assert np.max(np.abs(w.values(xs) - w.values(a + b - xs))) <= 1e-8


def test_dist_boundary_build_is_exposed():
    sys_ = C.dist_boundary_build(0.0, 0.0, 0.0, 0.0, 2.0)
    assert sys_.n == 1
    assert sys_.breakpoints == (1.0,)


def test_dist_boundary_large_nu_flagged():
    nu_bound = 0.5  # |1-gamma|/(2+mu-gamma) at defaults
    inst = C.instantiate("dist_boundary", nu=nu_bound * 1.2)
    assert not inst.admissible
    rep = scan_nonnegativity(inst.weights, grid=800)
    assert not rep.all_nonnegative


# --- admissibility boundaries are sharp ------------------------------------------------

@pytest.mark.parametrize(
    "entry_id,params",
    [
        ("trig_hardy", {"alpha": -1.2}),
        ("trig_hardy", {"alpha": -1.01}),
        ("trig_hardy", {"alpha": 0.01}),
        ("trig_weight", {"alpha": -5.0}),
        ("trig_weight", {"alpha": -4.2415}),  # 1% below the admissible endpoint
        ("hardy_bessel", {"nu": 0.505}),
        ("rellich_power", {"beta": None}),  # filled below: beta* + 0.01
    ],
)
def test_outside_range_produces_negative_weight(entry_id, params):
    if entry_id == "rellich_power" and params.get("beta") is None:
        ap, _, _ = C.rellich_alpha_closed(0.0)
        params = {"alpha": ap, "beta": C.rellich_beta(ap, 0.0) + 0.01}
    inst = C.instantiate(entry_id, params)
    assert not inst.admissible
    rep = scan_nonnegativity(inst.weights, grid=1200)
    bad = rep.first_violation()
    assert bad is not None
    assert bad.min_value < -1e-8
    lo, hi = inst.weights.domain
    assert (lo if math.isinf(lo) else lo) < bad.argmin < (hi if not math.isinf(hi) else 1e9)


def test_hardy_log_depths():
    for n_terms in (1, 2, 3):
        eta = C.specials.iter_exp(n_terms) * 1.0
        inst = C.instantiate("hardy_log", N=n_terms, eta=eta)
        assert inst.admissible
        rep = scan_nonnegativity(inst.weights, grid=500)
        assert rep.all_nonnegative, (n_terms, rep.first_violation())


def test_catalog_corpus_spot_checks():
    for entry_id in ("trig_hardy", "hardy_interval", "rellich_trig"):
        inst = C.instantiate(entry_id)
        rep = V.verify_corpus(inst.weights, corpus=4, seed=2)
        assert rep.passed, entry_id
