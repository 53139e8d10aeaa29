"""Jet arithmetic kernel: compiled core with pure-NumPy fallback."""

from ._backend import BACKEND, backend_name
from .core import (
    BINOM,
    BUMP_EDGE,
    ELEMENTARY,
    MAX_ORDER,
    Jet,
    SmoothMap,
    bump,
    bump_many,
    compose,
    constant_map,
    cos,
    cosh,
    cot,
    coth,
    exp,
    log,
    pow_int,
    sin,
    sinh,
    sqrt,
    tan,
    tanh,
)

__all__ = [
    "BACKEND", "backend_name", "BINOM", "BUMP_EDGE", "ELEMENTARY", "MAX_ORDER",
    "Jet", "SmoothMap", "bump", "bump_many", "compose", "constant_map",
    "cos", "cosh", "cot", "coth", "exp", "log", "pow_int", "sin", "sinh",
    "sqrt", "tan", "tanh",
]
