import math

import numpy as np
import pytest

from opineq import exprlang as E
from opineq.errors import DomainError, ParseError, UnboundParameterError


def test_parse_power_node():
    e = E.parse("x^(g/2)")
    assert isinstance(e, E.BinOp) and e.op == "^"
    assert isinstance(e.left, E.Var)
    assert E.free_params(e) == {"g"}


def test_parse_trig_choice():
    # unary minus binds tighter than '*': (-(1/2)) * cot(x)
    e = E.parse("-(1/2)*cot(x)")
    assert isinstance(e, E.BinOp) and e.op == "*"
    assert e.left == E.Neg(E.BinOp("/", E.Num(1.0), E.Num(2.0)))
    assert e.right == E.Call("cot", (E.Var(),))
    assert E.eval_number(e, {}, math.pi / 4) == -0.5 / math.tan(math.pi / 4)


def test_syntax_error_offset():
    with pytest.raises(ParseError) as err:
        E.parse("x^")
    assert err.value.position == 2


def test_unknown_function():
    with pytest.raises(ParseError):
        E.parse("if(x, 1, 2)")


def test_unexpected_character():
    with pytest.raises(ParseError) as err:
        E.parse("x + $y")
    assert err.value.position == 4


def test_unary_minus_binds_looser_than_power():
    assert E.eval_number(E.parse("-x^2"), {}, 3.0) == -9.0
    assert E.eval_number(E.parse("(-x)^2"), {}, 3.0) == 9.0
    assert E.eval_number(E.parse("2^-2"), {}, 0.0) == 0.25


def test_power_right_associative():
    assert E.eval_number(E.parse("2^3^2"), {}, 0.0) == 512.0


def test_constants():
    assert E.eval_number(E.parse("pi"), {}, 0.0) == math.pi
    assert E.eval_number(E.parse("e"), {}, 0.0) == math.e


_ROUNDTRIP_CORPUS = [
    "x", "1.5", "-x", "x + 1", "x - 1 - 2", "x*x - x/2", "x^2", "x^(g/2)",
    "-x^2", "(-x)^2", "2^3^2", "a*x + b", "sin(x)", "cos(x)*sin(x)",
    "tan(x)/x", "cot(x)", "sinh(x) + cosh(x)", "tanh(x)*coth(x)",
    "exp(-x^2)", "ln(x)", "ln(eta/x)", "sqrt(1 + x^2)", "pow(x, 3)",
    "pow(x, g)", "ln_p(2, eta/x)", "bessel_j(0, x)", "bessel_j(nu, c*x)",
    "dist(0, 1, x)", "dist(a, b, x)^2", "piecewise(0.5, x^2, (1 - x)^2)",
    "-(1/2)*cot(x)", "((gamma-1)/2)*x^(gamma/2-1)", "x^(gamma/2)",
    "alpha*tan(x) - beta*cot(x)", "1/sin(x)", "alpha*cot(x)",
    "beta*x^(gamma/2-2)", "-x^(gamma/2)", "(0.25 + pi^2)/x^2",
    "x^2 - -x", "1 + 2*3^4", "(1 + 2)*3", "x/(y*z)", "x/y/z", "x - (y - z)",
    "exp(sin(x))", "1/(2 + sin(x))", "sqrt(x)*ln(x)", "2e-3*x", "0.5*x^-2",
    "ln(x)^(-0.5)",
]


@pytest.mark.parametrize("src", _ROUNDTRIP_CORPUS)
def test_print_parse_roundtrip(src):
    ast = E.parse(src)
    assert E.parse(E.print_expr(ast)) == ast


def test_compile_constant_power():
    m = E.compile("x^(gamma/2)", {"gamma": 0.0}, (0.0, math.inf))
    j = m.evaluate(2.7, 3)
    assert np.allclose(j.derivs, [1, 0, 0, 0])


def test_compile_cot():
    m = E.compile("cot(x)", {}, (0.0, math.pi))
    j = m.evaluate(math.pi / 2, 1)
    assert abs(j.deriv(0)) < 1e-15 and math.isclose(j.deriv(1), -1.0)


def test_dist_square_piecewise():
    m = E.compile("dist(0, 1, x)^2", {}, (0.0, 1.0))
    assert m.breakpoints == (0.5,)
    assert math.isclose(m.value(0.25), 0.0625)
    assert math.isclose(m.value(0.75), 0.0625)
    # derivative flips sign across the corner
    assert math.isclose(m.evaluate(0.25, 1).deriv(1), 0.5)
    assert math.isclose(m.evaluate(0.75, 1).deriv(1), -0.5)


def test_piecewise_construct():
    m = E.compile("piecewise(0.5, x^2, (1 - x)^2)", {}, (0.0, 1.0))
    assert m.breakpoints == (0.5,)
    assert math.isclose(m.value(0.3), 0.09)
    assert math.isclose(m.value(0.9), 0.01)


def test_dist_requires_variable_argument():
    with pytest.raises(DomainError):
        E.compile("dist(0, 1, x^2)", {}, (0.0, 1.0))


def test_unbound_parameter():
    with pytest.raises(UnboundParameterError):
        E.compile("alpha*x", {}, (0.0, 1.0))


def test_ln_domain_violation_reports_position():
    m = E.compile("ln(x)", {}, (-1.0, 1.0))
    with pytest.raises(DomainError):
        m.evaluate(-0.5, 0)


def test_bessel_expression():
    m = E.compile("bessel_j(0, x)", {}, (0.0, 10.0))
    from opineq.specials import bessel_j

    assert math.isclose(m.value(1.7), bessel_j(0.0, 1.7), rel_tol=1e-12)


_EVAL_CORPUS = [
    ("x^2 - 3*x + 1", {}, (0.2, 3.0)),
    ("sin(2*x)*exp(-x/3)", {}, (0.2, 3.0)),
    ("alpha*cot(x)", {"alpha": -0.5}, (0.3, 2.8)),
    ("((gamma-1)/2)*x^(gamma/2-1)", {"gamma": 3.0}, (0.3, 3.0)),
    ("ln_p(2, eta/x)", {"eta": 40.0}, (0.3, 2.0)),
    ("sqrt(1 + x^2)/cosh(x)", {}, (0.2, 2.5)),
    ("pow(x, g) - tanh(x)", {"g": 0.7}, (0.3, 2.5)),
    ("dist(0, 4, x) + x", {}, (0.2, 3.8)),
]


@pytest.mark.parametrize("src,params,window", _EVAL_CORPUS, ids=[c[0] for c in _EVAL_CORPUS])
def test_compiled_order0_matches_interpreter(src, params, window, rng):
    dom = (window[0] - 0.1, window[1] + 0.1)
    m = E.compile(src, params, dom)
    ast = E.parse(src)
    xs = rng.uniform(*window, 100)
    xs = xs[np.all([np.abs(xs - p) > 1e-6 for p in m.breakpoints] or [np.ones_like(xs, bool)], axis=0)]
    got = m.values(xs)
    want = np.array([E.eval_number(ast, params, float(x)) for x in xs])
    assert np.max(np.abs(got - want) / (1.0 + np.abs(want))) < 1e-14
