from fractions import Fraction
from math import comb, factorial

import pytest

from betabounds.function_model import catalog_by_id


def exact_beta(x: int, y: int) -> Fraction:
    """B(x, y) for positive integers, from factorials."""
    return Fraction(factorial(x - 1) * factorial(y - 1), factorial(x + y - 1))


def exact_weighted_poly(a, b, p, q, coeffs) -> Fraction:
    """int_a^b (x-a)^p (b-x)^q sum_d c_d x^d dx for integer p, q and rational a, b.

    With x = a + (b-a)s the integral becomes
    (b-a)^(p+q+1) sum_d c_d sum_j C(d,j) a^(d-j) (b-a)^j B(p+j+1, q+1).
    """
    a, b = Fraction(a), Fraction(b)
    h = b - a
    total = Fraction(0)
    for d, c in enumerate(coeffs):
        for j in range(d + 1):
            total += Fraction(c) * comb(d, j) * a ** (d - j) * h ** j * exact_beta(p + j + 1, q + 1)
    return h ** (p + q + 1) * total


@pytest.fixture(scope="session")
def catalog():
    return catalog_by_id()
