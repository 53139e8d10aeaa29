"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured figure (visible with `pytest -s` or in failure output).

Criteria with runtime budgets assert their own wall time; the final test
checks determinism of report emission and that this module stayed inside the
five-minute envelope.
"""

import json
import math
import time

import numpy as np
import pytest

from opineq import catalog as C
from opineq import cli
from opineq import coeff_engine as ce
from opineq import exprlang as E
from opineq import specials as sp
from opineq import sturm as S
from opineq import verifier as V
from opineq.jets import constant_map
from opineq.lucas import (
    binomial_identity_sum,
    check_product_identity,
    check_symmetric_identity,
    t_coeff,
    t_table,
)

from conftest import poly_map

_MODULE_T0 = time.monotonic()


def _report(num, detail):
    print(f"ACCEPTANCE {num:2d}: PASS  ({detail})")


def test_criterion_01_coefficient_triangle():
    t0 = time.monotonic()
    table = t_table(20)
    for n in range(21):
        for k in range(n // 2 + 1):
            assert table[n, k] == t_coeff(n, k)
    assert [table[4, k] for k in range(3)] == [1, -4, 2]
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _report(1, f"rows 0..20 exact, row 4 = (1,-4,2), {elapsed:.3f}s")


def test_criterion_02_identity_suite():
    t0 = time.monotonic()
    rng = np.random.default_rng(424242)
    smooth = [
        E.compile(src, {}, (-4.0, 4.0))
        for src in ("exp(sin(x))", "cos(x)*cosh(x/4)", "1/(2+sin(x))")
    ]
    worst = 0.0
    for _ in range(200):
        if rng.uniform() < 0.6:
            deg = int(rng.integers(1, 13))
            scale = np.array([math.factorial(j) for j in range(deg + 1)])
            f = poly_map(tuple(rng.uniform(-1, 1, deg + 1) / scale), (-4.0, 4.0))
        else:
            f = smooth[int(rng.integers(0, len(smooth)))]
        n = int(rng.integers(1, 9))
        x = float(rng.uniform(-3.5, 3.5))
        worst = max(
            worst, check_product_identity(f, n, x), check_symmetric_identity(f, n, x)
        )
    assert worst <= 1e-10
    for n in range(26):
        for l in range(n + 1):
            assert binomial_identity_sum(n, l) == 1
    elapsed = time.monotonic() - t0
    assert elapsed < 10.0
    _report(2, f"worst residual {worst:.2e} over 400 checks, {elapsed:.2f}s")


def test_criterion_03_residual_identity_oracle():
    t0 = time.monotonic()
    worst_gap = 0.0
    worst_margin = math.inf
    for entry_id in C.catalog_ids():
        inst = C.instantiate(entry_id)
        rep = V.verify_corpus(inst.weights, corpus=10, seed=42)
        for r in rep.reports:
            assert r.identity_gap <= 1e-8 * (1.0 + r.residual_direct), entry_id
            assert r.margin >= -1e-10, entry_id
            worst_gap = max(worst_gap, r.identity_gap / (1 + r.residual_direct))
            worst_margin = min(worst_margin, r.margin)
    elapsed = time.monotonic() - t0
    assert elapsed < 180.0
    _report(
        3,
        f"13 entries x 10 fns: gap <= {worst_gap:.2e}, "
        f"min margin {worst_margin:.3e}, {elapsed:.1f}s",
    )


def test_criterion_04_closed_form_weights():
    rng = np.random.default_rng(7)
    for gamma in (-2.0, 0.0, 1.0, 3.0):
        inst = C.instantiate("hardy_power", gamma=gamma)
        xs = rng.uniform(0.05, 50.0, 100)
        got = inst.weights.c[0].values(xs)
        want = ((1 - gamma) ** 2 / 4.0) * xs ** (gamma - 2.0)
        assert np.max(np.abs(got - want) / (1.0 + np.abs(want))) <= 1e-12, gamma

    inst = C.instantiate("trig_hardy", alpha=-0.5)
    xs = np.linspace(0.05, math.pi - 0.05, 200)
    want = 0.25 + 0.25 / np.sin(xs) ** 2
    assert np.max(np.abs(inst.weights.c[0].values(xs) - want)) <= 1e-12

    inst = C.instantiate("hyperbolic", alpha=0.5, beta=0.5)
    xs = np.linspace(0.05, 20.0, 200)
    want = 0.75 / np.cosh(xs) ** 2 + 0.25 / np.sinh(xs) ** 2
    assert np.max(np.abs(inst.weights.c[0].values(xs) - want)) <= 1e-12
    _report(4, "hardy_power/trig_hardy/hyperbolic constants reproduced to 1e-12")


def test_criterion_05_rellich_optimum():
    for gamma in (0.0, 1.0, 5.0):
        ap, am, _ = C.optimize_rellich_alpha(gamma)
        root = math.sqrt(((gamma - 2.0) ** 2 + 1.0) / 2.0)
        assert abs(ap - (2.0 - gamma + root)) <= 1e-8
        assert abs(am - (2.0 - gamma - root)) <= 1e-8
    ap, _, _ = C.optimize_rellich_alpha(0.0)
    inst = C.instantiate(
        "rellich_power", gamma=0.0, alpha=ap, beta=C.rellich_beta(ap, 0.0)
    )
    xs = np.linspace(0.1, 50.0, 300)
    assert np.max(np.abs(inst.weights.c[1].values(xs))) <= 1e-10
    assert abs(inst.weights.c[0].value(1.0) - 9.0 / 16.0) <= 1e-9
    _report(5, "alpha_pm match to 1e-8; c[2,1] = 0 and c[2,0](1) = 9/16")


def test_criterion_06_trig_weight_range():
    closed, _ = C.trig_alpha_range(method="closed")
    numeric, _ = C.trig_alpha_range(method="numeric")
    assert abs(closed - numeric) <= 1e-6
    assert int(closed * 1e4) / 1e4 == -4.1995
    _report(6, f"admissible endpoint {closed:.8f}, numeric agrees to 1e-6")


def test_criterion_07_special_functions():
    assert abs(sp.bessel_zero(0.0, 1) - 2.404825557695773) <= 1e-9
    worst = 0.0
    for nu in (0.0, 0.5, 1.0, 2.0, 3.5, 6.0):
        for z in (0.5, 1.5, 3.0, 4.9, 5.1, 10.0, 40.0, 120.0):
            w = sp.bessel_j(nu, z) * sp.bessel_y_prime(nu, z) - sp.bessel_j_prime(
                nu, z
            ) * sp.bessel_y(nu, z)
            worst = max(worst, abs(w - 2.0 / (math.pi * z)))
    assert worst <= 1e-9
    # first zero of J_1' by independent bracketing on the recurrence form
    f = lambda z: 0.5 * (sp.bessel_j(0.0, z) - sp.bessel_j(2.0, z))
    lo, hi = 1.5, 2.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    assert abs(sp.g_zero(1.0, 0.0, 1.0) - 0.5 * (lo + hi)) <= 1e-10
    _report(7, f"j01 to 1e-9, Wronskian worst {worst:.2e}, g_zero(1,0,1) = J_1' zero")


def test_criterion_08_sturm_round_trip():
    dom = (1.0, math.e)
    p = constant_map(1.0, dom)
    g = E.compile("(0.25 + pi^2)/x^2", {}, dom)
    sol = S.solve_sturm(S.SturmProblem(p, g, dom, S.PowerStart(sigma=1.0)))
    a1 = constant_map(1.0, dom)
    a0 = S.construct_a0(a1, sol)
    xs = np.linspace(1.02, math.e - 0.02, 40)
    u = np.sqrt(xs) * np.sin(np.pi * np.log(xs))
    du = (0.5 / np.sqrt(xs)) * np.sin(np.pi * np.log(xs)) + np.sqrt(xs) * np.cos(
        np.pi * np.log(xs)
    ) * np.pi / xs
    analytic = -du / u
    assert np.max(np.abs(a0.values(xs) - analytic) / (1.0 + np.abs(analytic))) <= 1e-6
    c = ce.specialize_first_order(a0, constant_map(1.0, a0.domain))
    want = g.values(xs)
    err = np.max(np.abs(c.values(xs) - want) / np.abs(want))
    assert err <= 1e-6
    _report(8, f"constructed a0 and round-trip weight within {err:.2e}")


def test_criterion_09_negative_testing(tmp_path):
    cases = [
        ("trig_hardy", ["--param", "alpha=-1.2"]),
        ("trig_weight", ["--param", "alpha=-5"]),
        ("hardy_bessel", ["--param", "nu=0.7"]),  # above |1-gamma|/(2+mu-gamma)=0.5
    ]
    for entry_id, extra in cases:
        out = tmp_path / f"{entry_id}.json"
        code = cli.run(
            ["catalog", "verify", entry_id, *extra, "--corpus", "2",
             "--grid", "800", "--out", str(out)]
        )
        assert code == 1, entry_id
        rep = json.loads(out.read_text())
        bad = [c for c in rep["checks"] if c["name"].startswith("weight") and not c["passed"]]
        assert bad and "argmin" in bad[0], entry_id
    _report(9, "three inadmissible instances flagged with locations, exit 1")


def test_criterion_10_determinism_and_budget(tmp_path):
    out1, out2 = tmp_path / "d1.json", tmp_path / "d2.json"
    args = ["catalog", "verify", "hardy_interval", "--corpus", "6", "--seed", "3"]
    assert cli.run([*args, "--out", str(out1)]) == 0
    assert cli.run([*args, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    elapsed = time.monotonic() - _MODULE_T0
    assert elapsed < 300.0
    _report(10, f"byte-identical reports under fixed seed; module took {elapsed:.1f}s")
