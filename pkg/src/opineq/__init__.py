"""opineq: integral inequalities from factorizations of differential operators.

Derives the weight functions that refine inequalities of the form

    integral |a_n(x) f^(n)(x)|^2 dx  >=  sum_m integral c_{n,m}(x) |f^(m)(x)|^2 dx

from a chosen coefficient tuple (a_0, ..., a_n), verifies them numerically
against compactly supported test functions, constructs first-order
coefficients from Sturm-Liouville solutions, and ships a catalog of named
Hardy/Rellich-type instances.
"""

__version__ = "0.1.0"
