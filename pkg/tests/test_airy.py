import math

import mpmath
import numpy as np
import pytest
from scipy.special import airy

from macdonald import RangeError, airy_ai, airy_ai_prime, airy_zero, airy_zero_table
from macdonald.airy import S_MAX, X_MAX


def test_ai_at_origin():
    assert airy_ai(0.0) == pytest.approx(3 ** (-2 / 3) / math.gamma(2 / 3), abs=1e-15)
    assert airy_ai_prime(0.0) == pytest.approx(-(3 ** (-1 / 3)) / math.gamma(1 / 3), abs=1e-15)


def test_airy_equation_second_difference():
    h = 1e-3
    x = -1.0
    d2 = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / h**2
    assert d2 == pytest.approx(x * airy_ai(x), abs=1e-7)


def test_against_scipy_on_range():
    xs = np.linspace(-X_MAX, 4.0, 181)
    ai, aip, _, _ = airy(xs)
    for x, a, ap in zip(xs, ai, aip):
        assert abs(airy_ai(x) - a) < 1e-12
        assert abs(airy_ai_prime(x) - ap) < 1e-12


def test_first_zero_value():
    assert abs(airy_ai(-2.33810741)) < 1e-8


@pytest.mark.parametrize("s, a", [(1, -2.33810741), (2, -4.08794944), (3, -5.52055983)])
def test_zero_examples(s, a):
    assert airy_zero(s) == pytest.approx(a, abs=5e-9)


def test_zeros_against_multiprecision():
    for s in range(1, S_MAX + 1):
        assert abs(airy_zero(s) - float(mpmath.airyaizero(s))) < 1e-10


def test_table_invariants():
    table = airy_zero_table()
    zs = [table[s] for s in range(1, S_MAX + 1)]
    assert all(a < 0 for a in zs)
    assert all(a > b for a, b in zip(zs, zs[1:]))
    for a in zs:
        assert abs(airy_ai(a)) < 1e-10
    # Ai' alternates in sign at consecutive zeros, so it vanishes between them
    signs = [math.copysign(1, airy_ai_prime(a)) for a in zs]
    assert all(p == -q for p, q in zip(signs, signs[1:]))


@pytest.mark.parametrize("s", [0, 11, -1])
def test_zero_range(s):
    with pytest.raises(RangeError):
        airy_zero(s)


@pytest.mark.parametrize("x", [X_MAX + 0.1, -X_MAX - 0.1])
def test_value_range(x):
    with pytest.raises(RangeError):
        airy_ai(x)
