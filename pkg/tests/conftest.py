import numpy as np
import pytest

from opineq.jets import Jet, SmoothMap


def poly_jet(coeffs, xj):
    """Horner evaluation of an ascending-coefficient polynomial on a jet."""
    acc = Jet.constant(coeffs[-1], xj.order, xj.width)
    for c in reversed(coeffs[:-1]):
        acc = acc * xj + c
    return acc


def poly_map(coeffs, domain):
    return SmoothMap.from_jet_fn(lambda xj: poly_jet(coeffs, xj), domain)


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)
