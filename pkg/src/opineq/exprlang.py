"""Small expression language for coefficient functions.

Grammar (EBNF, also in docs/expressions.md):

    expr     = term { ("+" | "-") term } ;
    term     = unary { ("*" | "/") unary } ;
    unary    = "-" unary | power ;
    power    = atom [ "^" unary ] ;              (right-associative)
    atom     = NUMBER | NAME | NAME "(" args ")" | "(" expr ")" ;
    args     = expr { ("," | ";") expr } ;

Unary minus binds looser than "^": -x^2 parses as -(x^2). Numeric literals
are decimal only; there is no implicit multiplication. NAME is either the
variable x, a constant (pi, e), a parameter to be bound at compile time, or
one of the known functions:

    sin cos tan cot sinh cosh tanh coth exp ln sqrt
    pow(u, v)        general power
    ln_p(p, u)       p-fold iterated logarithm, p a constant integer
    bessel_j(nu, u)  Bessel J of constant order nu >= 0
    dist(a, b, x)    distance to the boundary of (a, b): min(x-a, b-x);
                     introduces a breakpoint at (a+b)/2; third argument
                     must be the variable itself
    piecewise(bp; left; right)
                     left of the constant bp use `left`, right of it `right`;
                     introduces a breakpoint at bp

Arbitrary conditionals are rejected: piecewise definitions enter only through
dist and piecewise so that breakpoint bookkeeping stays sound.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from . import jets, specials
from .errors import DomainError, ParseError, UnboundParameterError
from .jets import Jet, SmoothMap


# --- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


FUNCTIONS = {
    "sin": 1, "cos": 1, "tan": 1, "cot": 1,
    "sinh": 1, "cosh": 1, "tanh": 1, "coth": 1,
    "exp": 1, "ln": 1, "sqrt": 1,
    "pow": 2, "ln_p": 2, "bessel_j": 2, "dist": 3, "piecewise": 3,
}

CONSTANTS = {"pi": math.pi, "e": math.e}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*|\.\d+|\d+)(?P<exp>[eE][+-]?\d+)?"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),;]))"
)


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            stripped = src[pos:].lstrip()
            at = len(src) - len(stripped)
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group("num") is not None:
            text = m.group("num") + (m.group("exp") or "")
            tokens.append(("num", float(text), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


_BINARY = {"+": (10, 11), "-": (10, 11), "*": (20, 21), "/": (20, 21), "^": (30, 30)}
_UNARY_BP = 25


class _Parser:
    def __init__(self, src):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text!r}", pos)
        return self.advance()

    def parse(self):
        e = self.expr(0)
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing {text!r}", pos)
        return e

    def expr(self, min_bp):
        left = self.prefix()
        while True:
            kind, text, _ = self.peek()
            if kind != "op" or text not in _BINARY:
                return left
            lbp, rbp = _BINARY[text]
            if lbp < min_bp:
                return left
            self.advance()
            right = self.expr(rbp)
            left = BinOp(text, left, right)

    def prefix(self):
        kind, text, pos = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.expr(_UNARY_BP))
        return self.atom()

    def atom(self):
        kind, text, pos = self.advance()
        if kind == "num":
            return Num(text)
        if kind == "name":
            nk, nt, _ = self.peek()
            if nk == "op" and nt == "(":
                if text not in FUNCTIONS:
                    raise ParseError(f"unknown function {text!r}", pos)
                self.advance()
                args = [self.expr(0)]
                while True:
                    k2, t2, p2 = self.peek()
                    if k2 == "op" and t2 in (",", ";"):
                        self.advance()
                        args.append(self.expr(0))
                    elif k2 == "op" and t2 == ")":
                        self.advance()
                        break
                    else:
                        raise ParseError(f"expected ',' or ')', found {t2!r}", p2)
                if len(args) != FUNCTIONS[text]:
                    raise ParseError(
                        f"{text} takes {FUNCTIONS[text]} argument(s), got {len(args)}",
                        pos,
                    )
                return Call(text, tuple(args))
            if text == "x":
                return Var()
            if text in CONSTANTS:
                return Num(CONSTANTS[text])
            return Param(text)
        if kind == "op" and text == "(":
            e = self.expr(0)
            self.expect_op(")")
            return e
        raise ParseError(f"expected a value, found {text!r}" if text else "unexpected end of input", pos)


def parse(src):
    """Parse an expression string into an AST; raises ParseError with offset."""
    return _Parser(src).parse()


# --- printing ----------------------------------------------------------------

def _prec(e):
    if isinstance(e, BinOp):
        return _BINARY[e.op][0]
    if isinstance(e, Neg):
        return _UNARY_BP
    return 100


def print_expr(e):
    """Render an AST back to a parseable string (round-trip stable)."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Neg):
        inner = print_expr(e.arg)
        if _prec(e.arg) < _UNARY_BP:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        lbp, rbp = _BINARY[e.op]
        ls = print_expr(e.left)
        rs = print_expr(e.right)
        if _prec(e.left) < lbp or (isinstance(e.left, Neg) and e.op == "^"):
            ls = f"({ls})"
        if _prec(e.right) < rbp:
            rs = f"({rs})"
        return f"{ls} {e.op} {rs}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(print_expr(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_params(e):
    """Names of unbound parameters appearing in the expression."""
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, Neg):
        return free_params(e.arg)
    if isinstance(e, BinOp):
        return free_params(e.left) | free_params(e.right)
    if isinstance(e, Call):
        out = set()
        for a in e.args:
            out |= free_params(a)
        return out
    return set()


# --- plain numeric interpreter ------------------------------------------------

_SCALAR_FN = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan,
    "cot": lambda v: math.cos(v) / math.sin(v),
    "sinh": math.sinh, "cosh": math.cosh, "tanh": math.tanh,
    "coth": lambda v: math.cosh(v) / math.sinh(v),
    "exp": math.exp, "ln": math.log, "sqrt": math.sqrt,
}


def eval_number(e, params, x):
    """Direct recursive evaluation at a point (the order-0 reference path)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return float(x)
    if isinstance(e, Param):
        if e.name not in params:
            raise UnboundParameterError(f"parameter {e.name!r} is not bound")
        return float(params[e.name])
    if isinstance(e, Neg):
        return -eval_number(e.arg, params, x)
    if isinstance(e, BinOp):
        lv = eval_number(e.left, params, x)
        rv = eval_number(e.right, params, x)
        if e.op == "+":
            return lv + rv
        if e.op == "-":
            return lv - rv
        if e.op == "*":
            return lv * rv
        if e.op == "/":
            return lv / rv
        return lv**rv
    if isinstance(e, Call):
        if e.name in _SCALAR_FN:
            return _SCALAR_FN[e.name](eval_number(e.args[0], params, x))
        if e.name == "pow":
            return eval_number(e.args[0], params, x) ** eval_number(e.args[1], params, x)
        if e.name == "ln_p":
            p = eval_number(e.args[0], params, x)
            return specials.iter_log(int(round(p)), eval_number(e.args[1], params, x))
        if e.name == "bessel_j":
            nu = eval_number(e.args[0], params, x)
            return specials.bessel_j(nu, eval_number(e.args[1], params, x))
        if e.name == "dist":
            a = eval_number(e.args[0], params, x)
            b = eval_number(e.args[1], params, x)
            v = eval_number(e.args[2], params, x)
            return min(v - a, b - v)
        if e.name == "piecewise":
            bp = eval_number(e.args[0], params, x)
            branch = e.args[1] if x < bp else e.args[2]
            return eval_number(branch, params, x)
    raise TypeError(f"not an expression node: {e!r}")


# --- jet compiler --------------------------------------------------------------

def _const_value(e, params, what):
    """Evaluate a sub-expression that must not involve the variable."""
    if free_vars(e):
        raise DomainError(f"{what} must be a constant expression")
    return eval_number(e, params, 0.0)


def free_vars(e):
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return free_vars(e.arg)
    if isinstance(e, BinOp):
        return free_vars(e.left) or free_vars(e.right)
    if isinstance(e, Call):
        return any(free_vars(a) for a in e.args)
    return False


def _collect_breakpoints(e, params):
    pts = set()
    if isinstance(e, Call):
        if e.name == "dist":
            a = _const_value(e.args[0], params, "dist endpoint")
            b = _const_value(e.args[1], params, "dist endpoint")
            if not isinstance(e.args[2], Var):
                raise DomainError("dist third argument must be the variable x")
            pts.add(0.5 * (a + b))
        elif e.name == "piecewise":
            pts.add(_const_value(e.args[0], params, "piecewise breakpoint"))
        for a in e.args:
            pts |= _collect_breakpoints(a, params)
    elif isinstance(e, Neg):
        pts |= _collect_breakpoints(e.arg, params)
    elif isinstance(e, BinOp):
        pts |= _collect_breakpoints(e.left, params)
        pts |= _collect_breakpoints(e.right, params)
    return pts


def _power_jet(base, exponent_value):
    if float(exponent_value).is_integer():
        return jets.pow_int(base, int(exponent_value))
    return base**float(exponent_value)


def _eval_jet(e, params, xj):
    if isinstance(e, Num):
        return Jet.constant(e.value, xj.order, xj.width)
    if isinstance(e, Var):
        return xj
    if isinstance(e, Param):
        return Jet.constant(float(params[e.name]), xj.order, xj.width)
    if isinstance(e, Neg):
        return -_eval_jet(e.arg, params, xj)
    if isinstance(e, BinOp):
        if e.op == "^" and not free_vars(e.right):
            return _power_jet(_eval_jet(e.left, params, xj), eval_number(e.right, params, 0.0))
        lv = _eval_jet(e.left, params, xj)
        rv = _eval_jet(e.right, params, xj)
        if e.op == "+":
            return lv + rv
        if e.op == "-":
            return lv - rv
        if e.op == "*":
            return lv * rv
        if e.op == "/":
            return lv / rv
        return jets.exp(rv * jets.log(lv))
    if isinstance(e, Call):
        if e.name in jets.ELEMENTARY:
            return jets.ELEMENTARY[e.name](_eval_jet(e.args[0], params, xj))
        if e.name == "pow":
            if not free_vars(e.args[1]):
                return _power_jet(
                    _eval_jet(e.args[0], params, xj),
                    eval_number(e.args[1], params, 0.0),
                )
            u = _eval_jet(e.args[0], params, xj)
            v = _eval_jet(e.args[1], params, xj)
            return jets.exp(v * jets.log(u))
        if e.name == "ln_p":
            p = int(round(_const_value(e.args[0], params, "ln_p order")))
            if p < 1:
                raise DomainError("ln_p order must be >= 1")
            u = _eval_jet(e.args[1], params, xj)
            for _ in range(p):
                u = jets.log(u)
            return u
        if e.name == "bessel_j":
            nu = _const_value(e.args[0], params, "bessel_j order")
            return specials.bessel_j_jet(nu, _eval_jet(e.args[1], params, xj))
        if e.name == "dist":
            a = _const_value(e.args[0], params, "dist endpoint")
            b = _const_value(e.args[1], params, "dist endpoint")
            return _select_by_mask(
                xj,
                np.atleast_1d(xj.value) <= 0.5 * (a + b),
                lambda xs: xs - a,
                lambda xs: b - xs,
            )
        if e.name == "piecewise":
            bp = _const_value(e.args[0], params, "piecewise breakpoint")
            return _select_by_mask(
                xj,
                np.atleast_1d(xj.value) < bp,
                lambda xs: _eval_jet(e.args[1], params, xs),
                lambda xs: _eval_jet(e.args[2], params, xs),
            )
    raise TypeError(f"not an expression node: {e!r}")


def _select_by_mask(xj, mask, left_fn, right_fn):
    """Evaluate two branches on complementary batch slices and stitch."""
    d = np.empty((xj.order + 1, xj.width))
    full = xj._d
    if mask.all() or (~mask).all():
        fn = left_fn if mask.all() else right_fn
        return fn(xj)
    d[:, mask] = left_fn(Jet._raw(np.ascontiguousarray(full[:, mask])))._d
    d[:, ~mask] = right_fn(Jet._raw(np.ascontiguousarray(full[:, ~mask])))._d
    return Jet._raw(d)


def compile(e, params, domain, breakpoints=()):
    """Compile an AST (or source string) into a SmoothMap over ``domain``."""
    if isinstance(e, str):
        e = parse(e)
    params = dict(params or {})
    missing = free_params(e) - set(params)
    if missing:
        raise UnboundParameterError(
            f"unbound parameter(s): {', '.join(sorted(missing))}"
        )
    a, b = float(domain[0]), float(domain[1])
    implied = {p for p in _collect_breakpoints(e, params) if a < p < b}
    bps = sorted(implied | {float(p) for p in breakpoints})
    src = print_expr(e)

    def fn_many(xs, order):
        xj = Jet.variable(xs, order)
        try:
            return _eval_jet(e, params, xj)._d
        except (ValueError, ZeroDivisionError) as exc:
            where = f"x={xs[0]}" if len(xs) == 1 else f"x in [{xs.min()}, {xs.max()}]"
            raise DomainError(f"evaluating {src!r} at {where}: {exc}") from exc

    return SmoothMap(fn_many, (a, b), bps, name=src)
