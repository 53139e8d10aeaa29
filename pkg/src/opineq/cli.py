"""Command-line interface and report emission.

Subcommands: coeffs, derive, verify, construct, hi-check, zeros, catalog.
Exit codes: 0 all checks pass; 1 a mathematical check failed (negative
weight, identity gap, non-positive solution); 2 usage or configuration
error. Reports are emitted as deterministic JSON (no timestamps; fixed key
order) and aligned text.
"""

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, catalog, exprlang, lucas, specials, sturm
from .coeff_engine import (
    TOL_SCAN,
    derive_weights,
    make_system,
    scan_nonnegativity,
    scan_window,
)
from .errors import ConfigError, OpineqError
from .verifier import TOL_IDENTITY, TOL_QUAD, verify_corpus

REPORT_SCHEMA = "opineq-report/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _env_float(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{name}={raw!r} is not a number") from exc


def tolerances():
    """Tolerance knobs, overridable through the environment."""
    return {
        "tol_quad": _env_float("OPINEQ_TOL_QUAD", TOL_QUAD),
        "tol_scan": _env_float("OPINEQ_TOL_SCAN", TOL_SCAN),
        "tol_identity": _env_float("OPINEQ_TOL_IDENTITY", TOL_IDENTITY),
    }


# --- configuration ---------------------------------------------------------

def _parse_endpoint(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return math.inf
        if s == "-inf":
            return -math.inf
        try:
            return float(s)
        except ValueError as exc:
            raise ConfigError(f"bad domain endpoint {v!r}") from exc
    return float(v)


@dataclass(frozen=True)
class SpecConfig:
    """A problem statement: order, domain, coefficient expressions, options."""

    n: int
    domain: tuple
    coefficients: tuple
    params: dict = field(default_factory=dict)
    breakpoints: tuple = ()
    grid: int = 2000
    corpus: int = 16
    seed: int = 0
    tol_quad: float = TOL_QUAD
    tol_scan: float = TOL_SCAN

    @classmethod
    def from_dict(cls, data):
        try:
            prob = data["problem"]
            coeffs = tuple(prob["coefficients"])
            n = int(prob.get("n", len(coeffs) - 1))
            domain = tuple(_parse_endpoint(v) for v in prob["domain"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"config missing required problem fields: {exc}") from exc
        if len(domain) != 2 or not domain[0] < domain[1]:
            raise ConfigError(f"bad domain {domain}")
        if len(coeffs) != n + 1:
            raise ConfigError(f"need n+1={n + 1} coefficients, got {len(coeffs)}")
        scan = data.get("scan", {})
        verify = data.get("verify", {})
        return cls(
            n=n,
            domain=domain,
            coefficients=coeffs,
            params={str(k): float(v) for k, v in data.get("params", {}).items()},
            breakpoints=tuple(float(b) for b in prob.get("breakpoints", ())),
            grid=int(scan.get("grid", 2000)),
            corpus=int(verify.get("corpus", 16)),
            seed=int(verify.get("seed", 0)),
            tol_quad=float(verify.get("tol_quad", tolerances()["tol_quad"])),
            tol_scan=float(scan.get("tol", tolerances()["tol_scan"])),
        )

    def to_dict(self):
        def endpoint(v):
            if math.isinf(v):
                return "inf" if v > 0 else "-inf"
            return v

        return {
            "problem": {
                "n": self.n,
                "domain": [endpoint(v) for v in self.domain],
                "coefficients": list(self.coefficients),
                "breakpoints": list(self.breakpoints),
            },
            "params": dict(self.params),
            "scan": {"grid": self.grid, "tol": self.tol_scan},
            "verify": {
                "corpus": self.corpus,
                "seed": self.seed,
                "tol_quad": self.tol_quad,
            },
        }

    def build_system(self):
        maps = []
        for src in self.coefficients:
            try:
                maps.append(
                    exprlang.compile(src, self.params, self.domain, self.breakpoints)
                )
            except OpineqError as exc:
                raise ConfigError(f"coefficient {src!r}: {exc}") from exc
        return make_system(maps, domain=self.domain)


def load_config(path):
    with open(path, "rb") as fh:
        blob = fh.read()
    text = blob.decode("utf-8")
    if path.endswith(".json") or text.lstrip().startswith("{"):
        data = json.loads(text)
    else:
        try:
            import tomllib as toml  # py >= 3.11
        except ImportError:
            import tomli as toml
        try:
            data = toml.loads(text)
        except toml.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return SpecConfig.from_dict(data)


def config_hash(cfg):
    payload = json.dumps(cfg.to_dict(), sort_keys=True).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


# --- report emission ---------------------------------------------------------

def _report(command, checks, extra=None):
    verdict = "pass" if all(c.get("passed", True) for c in checks) else "fail"
    rep = {
        "schema": REPORT_SCHEMA,
        "tool": "opineq",
        "version": __version__,
        "command": command,
        "checks": checks,
        "verdict": verdict,
    }
    if extra:
        rep.update(extra)
    return rep


def _json_default(obj):
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    raise TypeError(f"not JSON serializable: {obj!r}")


def _emit(rep, out_path, quiet=False):
    payload = json.dumps(rep, sort_keys=True, indent=2, default=_json_default) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
    if not quiet:
        _print_text(rep)
    return EXIT_OK if rep["verdict"] == "pass" else EXIT_CHECK_FAILED


def _print_text(rep):
    print(f"opineq {rep['version']} :: {rep['command']} :: verdict {rep['verdict'].upper()}")
    for c in rep["checks"]:
        status = "PASS" if c.get("passed", True) else "FAIL"
        detail = c.get("detail", "")
        print(f"  [{status}] {c['name']:28s} {detail}")


def _scan_checks(weights, grid, tol):
    report = scan_nonnegativity(weights, grid=grid, tol=tol)
    checks = []
    for r in report.records:
        checks.append(
            {
                "name": f"weight c[{weights.n},{r.m}] >= 0",
                "passed": bool(r.nonnegative),
                "min_value": r.min_value,
                "argmin": r.argmin,
                "detail": f"min {r.min_value:.6g} at x = {r.argmin:.9g}",
            }
        )
    return checks, report


def _corpus_checks(weights, corpus, seed, tols):
    rep = verify_corpus(
        weights,
        corpus=corpus,
        seed=seed,
        tol_quad=tols["tol_quad"],
        tol_identity=tols["tol_identity"],
    )
    worst_gap = max((r.identity_gap / (1.0 + r.residual_direct)) for r in rep.reports)
    worst_margin = min(r.margin for r in rep.reports)
    checks = [
        {
            "name": "residual identity",
            "passed": bool(rep.all_identity_ok),
            "worst_scaled_gap": worst_gap,
            "detail": f"worst scaled gap {worst_gap:.3g} over {corpus} functions",
        },
        {
            "name": "margin >= 0",
            "passed": bool(rep.all_margin_ok),
            "worst_margin": worst_margin,
            "detail": f"worst margin {worst_margin:.6g}",
        },
    ]
    per_function = [r.as_dict() for r in rep.reports]
    return checks, per_function


# --- subcommands ---------------------------------------------------------------

def cmd_coeffs(args):
    rows = lucas.triangle_rows(args.max_n)
    if args.format == "json":
        body = json.dumps({"max_n": args.max_n, "rows": rows}, sort_keys=True, indent=2)
    elif args.format == "csv":
        body = "\n".join(",".join(str(v) for v in row) for row in rows)
    else:
        width = max(len(str(v)) for row in rows for v in row)
        body = "\n".join(
            f"n={n:2d}: " + " ".join(f"{v:>{width}}" for v in row)
            for n, row in enumerate(rows)
        )
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)
    return EXIT_OK


def cmd_derive(args):
    cfg = load_config(args.config)
    grid = args.grid or cfg.grid
    weights = derive_weights(cfg.build_system())
    lo, hi = scan_window(weights.domain)
    xs = np.linspace(lo, hi, grid)
    for p in weights.breakpoints:
        xs = xs[np.abs(xs - p) > 1e-12 * max(1.0, hi - lo)]
    cols = [xs] + [w.values(xs) for w in weights.c]
    if args.out:
        header = "x," + ",".join(f"c_{weights.n}_{m}" for m in range(weights.n))
        np.savetxt(args.out, np.column_stack(cols), delimiter=",", header=header, comments="")
    checks, _ = _scan_checks(weights, grid, cfg.tol_scan)
    rep = _report(
        "derive",
        checks,
        {"config_hash": config_hash(cfg), "grid": grid, "window": [lo, hi]},
    )
    return _emit(rep, args.report)


def cmd_verify(args):
    cfg = load_config(args.config)
    tols = tolerances()
    tols["tol_quad"] = cfg.tol_quad
    weights = derive_weights(cfg.build_system())
    corpus = args.corpus or cfg.corpus
    seed = cfg.seed if args.seed is None else args.seed
    scan_checks, _ = _scan_checks(weights, cfg.grid, cfg.tol_scan)
    corpus_checks, per_function = _corpus_checks(weights, corpus, seed, tols)
    rep = _report(
        "verify",
        scan_checks + corpus_checks,
        {
            "instance": f"config:{config_hash(cfg)}",
            "config_hash": config_hash(cfg),
            "corpus_seed": seed,
            "corpus": corpus,
            "per_function": per_function,
        },
    )
    return _emit(rep, args.out)


def cmd_construct(args):
    lo, hi = (_parse_endpoint(v) for v in args.domain.split(","))
    p_sq = exprlang.compile(args.p, {}, (lo, hi))
    g = exprlang.compile(args.g, {}, (lo, hi))
    if args.ic:
        u0, v0 = (float(v) for v in args.ic.split(","))
        ic = sturm.ExplicitStart(offset=args.offset, u=u0, du=v0)
    else:
        ic = sturm.PowerStart(sigma=args.sigma)
    prob = sturm.SturmProblem(p_sq, g, (lo, hi), ic)
    sol = sturm.solve_sturm(prob)
    a1 = exprlang.compile(f"sqrt({args.p})", {}, (lo, hi))
    a0 = sturm.construct_a0(a1, sol)
    wlo, whi = a0.domain
    span = whi - wlo
    xs = np.linspace(wlo + 1e-3 * span, whi - 1e-3 * span, args.grid)
    if args.out:
        np.savetxt(
            args.out,
            np.column_stack([xs, a0.values(xs)]),
            delimiter=",",
            header="x,a0",
            comments="",
        )
    checks = [
        {
            "name": "positive solution",
            "passed": bool(sol.positive),
            "first_zero": sol.first_zero,
            "detail": "no zero in working interval"
            if sol.positive
            else f"first zero at x = {sol.first_zero:.9g}",
        }
    ]
    rep = _report("construct", checks, {"working_domain": [wlo, whi]})
    return _emit(rep, args.report)


def cmd_hi_check(args):
    R = args.R
    P = exprlang.compile(args.P, {}, (0.0, R))
    if args.critical:
        crit = sturm.hi_critical_c(P, R)
        rep = _report(
            "hi-check",
            [
                {
                    "name": "critical coupling",
                    "passed": True,
                    "critical_c": crit,
                    "detail": f"first zero reaches R at c = {crit:.9g}",
                }
            ],
        )
        return _emit(rep, args.out)
    res = sturm.hi_potential_check(P, args.c, R)
    checks = [
        {
            "name": "positive solution on (0, R)",
            "passed": bool(res.positive),
            "first_zero": res.first_zero,
            "boundary": res.boundary,
            "detail": (
                "positive" + (" (zero at boundary)" if res.boundary else "")
                if res.positive
                else f"sign change at r = {res.first_zero:.9g}"
            ),
        }
    ]
    return _emit(_report("hi-check", checks, {"c": args.c, "R": R}), args.out)


def cmd_zeros(args):
    if args.bessel:
        nu, k = args.bessel.split(",")
        val = specials.bessel_zero(float(nu), int(k))
        print(f"{val:.15g}")
    else:
        gam, mu, nu = (float(v) for v in args.g.split(","))
        val = specials.g_zero(gam, mu, nu)
        print(f"{val:.15g}")
    return EXIT_OK


def _parse_params(pairs):
    out = {}
    for raw in pairs or ():
        if "=" not in raw:
            raise ConfigError(f"--param expects name=value, got {raw!r}")
        k, v = raw.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError as exc:
            raise ConfigError(f"--param {raw!r}: value is not a number") from exc
    return out


def cmd_catalog(args):
    if args.action == "list":
        for cid in catalog.catalog_ids():
            entry = catalog.get_entry(cid)
            print(f"{cid:15s} n={entry.n}  {entry.description}")
        return EXIT_OK
    if args.action == "show":
        entry = catalog.get_entry(args.id)
        print(f"{entry.id}: {entry.description}")
        print(f"  order n = {entry.n}")
        print(f"  defaults: {entry.defaults}")
        print(f"  notes: {entry.notes}")
        return EXIT_OK
    # verify
    params = _parse_params(args.param)
    inst = catalog.instantiate(args.id, params)
    tols = tolerances()
    checks = [
        {
            "name": "parameters admissible",
            "passed": True,  # informational: inadmissible is allowed, scans decide
            "admissible": bool(inst.admissible),
            "detail": "inside documented range"
            if inst.admissible
            else "OUTSIDE documented range (negative testing)",
        }
    ]
    scan_checks, _ = _scan_checks(inst.weights, args.grid, tols["tol_scan"])
    corpus_checks, per_function = _corpus_checks(
        inst.weights, args.corpus, args.seed, tols
    )
    rep = _report(
        "catalog verify",
        checks + scan_checks + corpus_checks,
        {
            "instance": inst.entry_id,
            "params": dict(sorted(inst.params.items())),
            "admissible": bool(inst.admissible),
            "corpus_seed": args.seed,
            "per_function": per_function,
        },
    )
    return _emit(rep, args.out)


# --- argument parsing -------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="opineq",
        description="derive, verify, construct, and optimize one-dimensional "
        "integral inequalities obtained from operator factorizations",
    )
    ap.add_argument("--version", action="version", version=f"opineq {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("coeffs", help="print the coefficient triangle t[n][k]")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("derive", help="derive weights from a config and dump a grid")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", type=int)
    p.add_argument("--out", help="CSV output path for (x, c...) columns")
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(fn=cmd_derive)

    p = sub.add_parser("verify", help="scan weights and run the residual-identity corpus")
    p.add_argument("--config", required=True)
    p.add_argument("--corpus", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("construct", help="build a0 from a Sturm-Liouville solution")
    p.add_argument("--p", required=True, help="expression for p = a1^2 (> 0)")
    p.add_argument("--g", required=True, help="expression for the target weight")
    p.add_argument("--domain", required=True, help="a,b (inf allowed for b)")
    p.add_argument("--sigma", type=float, default=1.0, help="leading exponent at a")
    p.add_argument("--ic", help="explicit u0,u0' at a+offset instead of --sigma")
    p.add_argument("--offset", type=float, default=1e-6)
    p.add_argument("--grid", type=int, default=500)
    p.add_argument("--out", help="CSV output path for (x, a0)")
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("hi-check", help="positive-solution check for an improving potential")
    p.add_argument("--P", required=True, help="potential expression (nonnegative)")
    p.add_argument("--R", type=float, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--c", type=float, help="coupling to test")
    g.add_argument("--critical", action="store_true", help="bisect the threshold coupling")
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(fn=cmd_hi_check)

    p = sub.add_parser("zeros", help="Bessel and mixed-boundary-function zeros")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bessel", help="nu,k: k-th positive zero of J_nu")
    g.add_argument("--g", help="gamma,mu,nu: first zero of the mixed boundary function")
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("catalog", help="named instances: list / show / verify")
    p.add_argument("action", choices=("list", "show", "verify"))
    p.add_argument("id", nargs="?")
    p.add_argument("--param", action="append", help="name=value (repeatable)")
    p.add_argument("--corpus", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(fn=cmd_catalog)

    return ap


def run(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.cmd == "catalog" and args.action in ("show", "verify") and not args.id:
        ap.error("catalog show/verify needs an id")
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"opineq: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"opineq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OpineqError as exc:
        print(f"opineq: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
