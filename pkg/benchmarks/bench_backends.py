#!/usr/bin/env python3
"""Benchmark the compiled jet core against the pure-NumPy fallback.

Kernel microbenchmarks run both implementations in-process; the end-to-end
row re-runs a catalog corpus verification in a subprocess with
OPINEQ_JET_BACKEND forced, since the backend is fixed at import time.

Usage: python benchmarks/bench_backends.py [--skip-end-to-end]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def _time(fn, *args, repeat=2000):
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def kernel_rows():
    import opineq.jets._jetpure as pure

    try:
        import opineq.jets._jetcore as core
    except ImportError:
        print("compiled core not built; kernel comparison skipped")
        return []

    rng = np.random.default_rng(0)
    rows = []
    for order, batch in ((8, 1), (8, 15), (2, 15), (16, 101)):
        a = np.ascontiguousarray(rng.normal(size=(order + 1, batch)))
        b = np.ascontiguousarray(rng.normal(size=(order + 1, batch)))
        b[0] += 3.0
        pos = np.abs(a) + 0.5
        for name, args in (
            ("mul", (a, b)),
            ("div", (a, b)),
            ("jexp", (a,)),
            ("sincos", (a,)),
            ("pow_real", (pos, 0.37)),
            ("compose", (b, a)),
        ):
            tp = _time(getattr(pure, name), *args)
            tc = _time(getattr(core, name), *args)
            rows.append((f"{name} (order {order}, batch {batch})", tp, tc))
    return rows


_CORPUS_SNIPPET = """
import time
from opineq import catalog, verifier
t0 = time.perf_counter()
for entry_id in ("hardy_power", "trig_hardy", "rellich_power", "hardy_bessel"):
    inst = catalog.instantiate(entry_id)
    verifier.verify_corpus(inst.weights, corpus=8, seed=0)
print(f"{time.perf_counter() - t0:.3f}")
"""

_SHOOTING_SNIPPET = """
import time
from opineq import exprlang, sturm
P = exprlang.compile("1/(1 + x^2)", {}, (0.0, 1.0))
t0 = time.perf_counter()
sturm.hi_critical_c(P, 1.0, rel_tol=1e-6)
print(f"{time.perf_counter() - t0:.3f}")
"""


def _timed_subprocess(snippet, backend):
    env = dict(os.environ, OPINEQ_JET_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", snippet],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return float(out.stdout.split()[-1])


def end_to_end_rows():
    rows = []
    for label, snippet in (
        ("corpus verification, 4 entries x 8 fns", _CORPUS_SNIPPET),
        ("threshold-coupling bisection (ODE shooting)", _SHOOTING_SNIPPET),
    ):
        try:
            tp = _timed_subprocess(snippet, "pure")
            tc = _timed_subprocess(snippet, "compiled")
        except subprocess.CalledProcessError as exc:
            print(f"end-to-end '{label}' failed: {exc.stderr.strip()}")
            continue
        rows.append((label, tp, tc))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()

    rows = kernel_rows()
    if not args.skip_end_to_end:
        rows.extend(end_to_end_rows())
    if not rows:
        return
    width = max(len(r[0]) for r in rows)
    print(f"{'benchmark':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        print(f"{name:<{width}}  {tp * 1e6:>8.2f}us  {tc * 1e6:>8.2f}us  {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
