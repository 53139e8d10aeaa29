"""Integer coefficients t[n][k] behind the product-of-derivatives identity.

These are the coefficients of the generalized Lucas polynomial V_n(xi, -1)
(OEIS A213234). They satisfy

    2 f(x) f^(n)(x) = sum_k t[n][k] * d^(n-2k)/dx^(n-2k) [ (f^(k)(x))^2 ],

which is the identity every derived inequality weight in this package rests
on. Everything here is exact integer arithmetic; the identity checks are the
only floating-point code.
"""

import math
from dataclasses import dataclass


def t_coeff(n, k):
    """Closed-form t[n][k]; 0 outside the triangle (k < 0, k > floor(n/2))."""
    if n < 0 or k < 0 or 2 * k > n:
        return 0
    if k == 0:
        return 2 if n == 0 else 1
    return (-1) ** k * (math.comb(n - k, k) + math.comb(n - k - 1, k - 1))


@dataclass(frozen=True)
class TCoeffTable:
    """Triangle t[n][k], 0 <= k <= floor(n/2), built by the recursion
    t[n+1][k] = t[n][k] - t[n-1][k-1]."""

    max_n: int
    rows: tuple

    def __getitem__(self, nk):
        n, k = nk
        if n < 0 or k < 0 or n > self.max_n or 2 * k > n:
            return 0
        return self.rows[n][k]

    def row(self, n):
        return self.rows[n]


def t_table(max_n):
    """Build the triangle by recursion up to row ``max_n``."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    rows = [(2,)]
    if max_n >= 1:
        rows.append((1,))
    for n in range(1, max_n):
        prev, prev2 = rows[n], rows[n - 1]
        width = (n + 1) // 2 + 1
        row = []
        for k in range(width):
            a = prev[k] if k < len(prev) else 0
            b = prev2[k - 1] if 0 <= k - 1 < len(prev2) else 0
            row.append(a - b)
        rows.append(tuple(row))
    return TCoeffTable(max_n=max_n, rows=tuple(rows))


def binomial_identity_sum(n, l):
    """sum_k (-1)^k C(n-k, k) C(n-2k, l-k), exact; equals 1 for 0 <= l <= n."""
    if not 0 <= l <= n:
        raise ValueError(f"l={l} outside 0..{n}")
    total = 0
    for k in range(n // 2 + 1):
        if 0 <= l - k <= n - 2 * k:
            total += (-1) ** k * math.comb(n - k, k) * math.comb(n - 2 * k, l - k)
    return total


def _squared_derivative_stack(fjet, k, upto):
    """Derivative stack of (f^(k))^2 to order ``upto`` from an order-n jet of f."""
    shifted = fjet.derivative(k).truncate(upto)
    return shifted * shifted


def check_product_identity(f, n, x):
    """Residual |2 f f^(n) - sum_k t[n][k] D^(n-2k)[(f^(k))^2]| at x.

    ``f`` is a SmoothMap evaluable to jet order n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    fjet = f.evaluate(x, n)
    lhs = 2.0 * fjet.deriv(0) * fjet.deriv(n)
    rhs = 0.0
    for k in range(n // 2 + 1):
        sq = _squared_derivative_stack(fjet, k, n - 2 * k)
        rhs += t_coeff(n, k) * sq.deriv(n - 2 * k)
    return abs(lhs - rhs)


def check_symmetric_identity(f, n, x):
    """Residual of sum_k (-1)^k C(n-k,k) D^(n-2k)[(f^(k))^2] = sum_l f^(n-l) f^(l)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    fjet = f.evaluate(x, n)
    lhs = 0.0
    for k in range(n // 2 + 1):
        sq = _squared_derivative_stack(fjet, k, n - 2 * k)
        lhs += (-1) ** k * math.comb(n - k, k) * sq.deriv(n - 2 * k)
    rhs = sum(fjet.deriv(n - l) * fjet.deriv(l) for l in range(n + 1))
    return abs(lhs - rhs)


def triangle_rows(max_n):
    """Rows of the triangle as lists, for printing and the CLI."""
    table = t_table(max_n)
    return [list(table.row(n)) for n in range(max_n + 1)]
