"""Real Airy function Ai, its derivative, and its negative zeros.

Values come from the two Maclaurin series

    f(x) = sum_k 3^k (1/3)_k x^(3k) / (3k)!
    g(x) = sum_k 3^k (2/3)_k x^(3k+1) / (3k+1)!

with Ai = c1 f - c2 g.  Near |x| = 13 individual terms reach ~1e13 while Ai
is O(1), so the sums are carried out in a private 50-digit mpmath context and
rounded to float at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from .errors import RangeError

X_MAX = 14.0
S_MAX = 10
ZERO_TOL = 1e-13

_ctx = mpmath.MPContext()
_ctx.dps = 50

_C1 = _ctx.mpf(3) ** (_ctx.mpf(-2) / 3) / _ctx.gamma(_ctx.mpf(2) / 3)
_C2 = _ctx.mpf(3) ** (_ctx.mpf(-1) / 3) / _ctx.gamma(_ctx.mpf(1) / 3)
_EPS = _ctx.mpf(10) ** (-45)


def _check_range(x):
    if not abs(x) <= X_MAX:
        raise RangeError(f"|x| = {abs(x)} outside the series range |x| <= {X_MAX}")


def _ai_pair(x):
    """(Ai(x), Ai'(x)) as mpf values."""
    x = _ctx.mpf(x)
    x3 = x ** 3
    a = b = _ctx.mpf(1)  # coefficients of x^(3k) in f and x^(3k+1) in g
    p = _ctx.mpf(1)  # x^(3k)
    f, df = a, _ctx.mpf(0)
    g, dg = b * x, b
    k = 0
    while True:
        k += 1
        a /= (3 * k - 1) * (3 * k)
        b /= (3 * k) * (3 * k + 1)
        p_prev, p = p, p * x3
        f += a * p
        df += 3 * k * a * p_prev * x * x
        g += b * p * x
        dg += (3 * k + 1) * b * p
        if k > 2 and (abs(a) + abs(b)) * (abs(p) + 1) < _EPS:
            break
    return _C1 * f - _C2 * g, _C1 * df - _C2 * dg


def airy_ai(x: float) -> float:
    _check_range(x)
    return float(_ai_pair(x)[0])


def airy_ai_prime(x: float) -> float:
    _check_range(x)
    return float(_ai_pair(x)[1])


def _zero_estimate(s: int) -> float:
    return -((3.0 * math.pi * (4 * s - 1) / 8.0) ** (2.0 / 3.0))


@lru_cache(maxsize=None)
def airy_zero(s: int) -> float:
    """The s-th negative zero a_s of Ai (a_1 > a_2 > ...)."""
    if not (isinstance(s, int) and 1 <= s <= S_MAX):
        raise RangeError(f"Airy zero index must be in 1..{S_MAX}, got {s!r}")
    x = _ctx.mpf(_zero_estimate(s))
    for _ in range(50):
        ai, aip = _ai_pair(x)
        step = ai / aip
        x -= step
        if abs(step) < 1e-30:
            break
    return float(x)


@dataclass(frozen=True)
class AiryZeroTable:
    zeros: tuple[float, ...]

    def __getitem__(self, s: int) -> float:
        if not 1 <= s <= len(self.zeros):
            raise RangeError(f"Airy zero index must be in 1..{len(self.zeros)}")
        return self.zeros[s - 1]

    def __len__(self):
        return len(self.zeros)


@lru_cache(maxsize=None)
def airy_zero_table() -> AiryZeroTable:
    return AiryZeroTable(tuple(airy_zero(s) for s in range(1, S_MAX + 1)))
