r"""Complex special-function kernel for the Macdonald function.

Everything here is a pure function of complex scalars.  The argument ``z`` of
:math:`K_\nu(z)` is always carried as its logarithm ``w = log z`` (a
:class:`SheetPoint`) so that the multivalued powers

.. math::
    (z/2)^{\pm\nu} = \exp(\pm\nu (w - \log 2))

are single valued on the whole logarithmic Riemann surface.  The function is
assembled from the two ascending series

.. math::
    S_\mp(z) = \sum_{k\ge0} \frac{(z^2/4)^k}{k!\,(1\mp\nu)_k},

and the Newton objective used by the solver is

.. math::
    E_\nu(z) = S_-(z) - (z/2)^{2\nu}\frac{\Gamma(1-\nu)}{\Gamma(1+\nu)} S_+(z),

whose zeros coincide with those of :math:`K_\nu` for non-integer order.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DegeneratePochhammerError, IntegerOrderError, PoleError

LOG2 = math.log(2.0)
LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
EULER_GAMMA = 0.57721566490153286061

SERIES_RTOL = 1e-18
SERIES_MAX_TERMS = 100
POLE_TOL = 1e-12
INTEGER_ORDER_TOL = 1e-8
ROUNDING_UNIT = 2.0 ** -52

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


@dataclass(frozen=True)
class SheetPoint:
    """A point ``z = exp(rho + i*phi)`` on the logarithmic Riemann surface.

    ``phi`` is never folded, so two points with the same ``z`` on different
    sheets are distinct.  Sheet 0 is the principal sheet ``-pi < phi <= pi``.
    """

    rho: float
    phi: float

    def __post_init__(self):
        if not (math.isfinite(self.rho) and math.isfinite(self.phi)):
            raise ValueError(f"non-finite sheet point ({self.rho}, {self.phi})")

    @classmethod
    def from_w(cls, w: complex) -> "SheetPoint":
        return cls(float(w.real), float(w.imag))

    @classmethod
    def from_z(cls, z: complex, sheet: int = 0) -> "SheetPoint":
        """Lift ``z`` onto sheet ``sheet`` (principal argument plus 2*pi*sheet)."""
        z = complex(z)
        if z == 0:
            raise ValueError("z = 0 has no logarithm")
        return cls(math.log(abs(z)), cmath.phase(z) + 2.0 * math.pi * sheet)

    @property
    def w(self) -> complex:
        return complex(self.rho, self.phi)

    @property
    def z(self) -> complex:
        return cmath.exp(self.w)

    @property
    def sheet_index(self) -> int:
        return sheet_index(self.phi)

    @property
    def is_principal(self) -> bool:
        return self.sheet_index == 0

    def rotated(self, angle: float) -> "SheetPoint":
        return SheetPoint(self.rho, self.phi + angle)

    def conjugate(self) -> "SheetPoint":
        return SheetPoint(self.rho, -self.phi)


def sheet_index(phi: float) -> int:
    """Index k of the sheet ``(2k-1)pi < phi <= (2k+1)pi``."""
    return math.ceil((phi - math.pi) / (2.0 * math.pi))


WLike = Union[SheetPoint, complex]


def _as_w(w: WLike) -> complex:
    if isinstance(w, SheetPoint):
        return w.w
    return complex(w)


@dataclass(frozen=True)
class Order:
    """Complex order together with its first-quadrant representative.

    ``K_{-nu}(z) = K_nu(z)`` and ``K_{conj nu}(conj z) = conj K_nu(z)``, so the
    zeros for ``nu`` are those for ``canonical_nu``, conjugated in ``z`` when
    ``conj_applied`` is set.
    """

    nu: complex
    canonical_nu: complex
    conj_applied: bool
    negate_applied: bool

    def describe(self) -> str:
        applied = []
        if self.negate_applied:
            applied.append("nu -> -nu")
        if self.conj_applied:
            applied.append("nu -> conj(nu), z -> conj(z)")
        return "; ".join(applied) if applied else "none"


def canonicalize(nu: complex) -> Order:
    nu = complex(nu)
    c = nu
    negate = c.real < 0 or (c.real == 0 and c.imag < 0)
    if negate:
        c = -c
    conj = c.imag < 0
    if conj:
        c = c.conjugate()
    # -0.0 components would put arg on the wrong side of the axis
    c = complex(c.real + 0.0, c.imag + 0.0)
    return Order(nu, c, conj, negate)


# ---------------------------------------------------------------------------
# Gamma function


def _near_nonpositive_integer(zeta: complex, tol: float = POLE_TOL) -> bool:
    n = round(zeta.real)
    return n <= 0 and abs(zeta - n) < tol


def _log_gamma_lanczos(zeta: complex) -> complex:
    z = zeta - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi_upper(zeta: complex) -> complex:
    # analytic log sin(pi*zeta) on Im zeta >= 0, fixed by its large-Im behaviour
    e = cmath.exp(2j * math.pi * zeta)
    return complex(-LOG2, 0.5 * math.pi) - 1j * math.pi * zeta + cmath.log(1.0 - e)


def log_gamma(zeta: complex) -> complex:
    """Principal branch of log Gamma(zeta).

    Lanczos approximation for ``Re zeta >= 1/2`` and the reflection formula
    elsewhere.  The branch agrees with the analytic continuation of the real
    log-gamma from the positive axis, with the cut along the negative axis.
    """
    zeta = complex(zeta)
    if _near_nonpositive_integer(zeta):
        raise PoleError(f"Gamma has a pole at {zeta}")
    if zeta.real >= 0.5:
        return _log_gamma_lanczos(zeta)
    if zeta.imag < 0:
        return log_gamma(zeta.conjugate()).conjugate()
    return LOG_PI - _log_sin_pi_upper(zeta) - _log_gamma_lanczos(1.0 - zeta)


def gamma_ratio(nu: complex) -> complex:
    """Gamma(1 + nu) / Gamma(1 - nu)."""
    nu = complex(nu)
    return cmath.exp(log_gamma(1.0 + nu) - log_gamma(1.0 - nu))


# ---------------------------------------------------------------------------
# Ascending series


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    truncation_ok: bool
    magnitude: float = 1.0  # sum of |term|, for conditioning estimates


def _sign_factor(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def _series(a: complex, w: complex) -> tuple[SeriesResult, complex]:
    """Sum_k q^k / (k! (a)_k) with q = exp(2w)/4, and its w-derivative."""
    if _near_nonpositive_integer(a):
        raise DegeneratePochhammerError(f"Pochhammer symbol ({a})_k vanishes")
    q = cmath.exp(2.0 * w) / 4.0
    term = 1.0 + 0j
    total = term
    dtotal = 0j
    mag = 1.0
    k = 0
    ok = False
    while k + 1 < SERIES_MAX_TERMS:
        k += 1
        term = term * q / (k * (a + (k - 1)))
        total += term
        dtotal += 2 * k * term
        mag += abs(term)
        if total == 0 or abs(term) < SERIES_RTOL * abs(total):
            ok = True
            break
    return SeriesResult(total, k + 1, ok, mag), dtotal


def kummer_series(sign, nu: complex, w: WLike) -> SeriesResult:
    """Ascending series ``sum_k (z^2/4)^k / (k! (1 -/+ nu)_k)``.

    ``sign='-'`` selects the ``(1 - nu)_k`` denominator, ``sign='+'`` the
    ``(1 + nu)_k`` one.  ``z^2`` is formed as ``exp(2w)``, so the value depends
    on ``w`` only through ``z`` and is the same on every sheet.
    Summation stops once ``|term / partial sum| < 1e-18``; if that has not
    happened after 100 terms the result carries ``truncation_ok=False``.
    """
    s = _sign_factor(sign)
    result, _ = _series(1.0 + s * complex(nu), _as_w(w))
    return result


# ---------------------------------------------------------------------------
# K and the residual


def _check_order(nu: complex) -> None:
    n = round(nu.real)
    if abs(nu - n) < INTEGER_ORDER_TOL:
        raise IntegerOrderError(
            f"order {nu} is within {INTEGER_ORDER_TOL:g} of the integer {n}; "
            "the ascending-series form needs non-integer order"
        )


class MacdonaldTerms(NamedTuple):
    prefactor: complex
    minus_term: complex
    plus_term: complex
    minus_series: SeriesResult
    plus_series: SeriesResult


def macdonald_terms(nu: complex, w: WLike) -> MacdonaldTerms:
    """The pieces of ``K = prefactor * (minus_term - plus_term)``.

    ``prefactor = (pi/2) / sin(nu*pi)``, ``minus_term = (z/2)^-nu S_- /
    Gamma(1-nu)`` and ``plus_term = (z/2)^nu S_+ / Gamma(1+nu)``.
    """
    nu = complex(nu)
    _check_order(nu)
    w = _as_w(w)
    lw = w - LOG2
    s_minus, _ = _series(1.0 - nu, w)
    s_plus, _ = _series(1.0 + nu, w)
    a_minus = cmath.exp(-nu * lw - log_gamma(1.0 - nu)) * s_minus.value
    a_plus = cmath.exp(nu * lw - log_gamma(1.0 + nu)) * s_plus.value
    pref = 0.5 * math.pi / cmath.sin(nu * math.pi)
    return MacdonaldTerms(pref, a_minus, a_plus, s_minus, s_plus)


def macdonald_k(nu: complex, w: WLike) -> complex:
    """K_nu(z) at ``z = exp(w)``, continued to every sheet."""
    t = macdonald_terms(nu, w)
    return t.prefactor * (t.minus_term - t.plus_term)


class Residual(NamedTuple):
    value: complex
    derivative: complex
    diagnostics: tuple[SeriesResult, SeriesResult]
    floor: float = 0.0


def zero_residual(nu: complex, w: WLike) -> Residual:
    """E_nu(z) and dE/dw at ``z = exp(w)``.

    The derivative is exact term by term: ``d/dw (z^2/4)^k = 2k (z^2/4)^k`` and
    ``d/dw (z/2)^(2 nu) = 2 nu (z/2)^(2 nu)``.  ``diagnostics`` holds the
    ``(S_-, S_+)`` series results; ``floor`` estimates the rounding noise in
    ``value`` from the summed term magnitudes.  Where the floor exceeds the
    Newton tolerance (large ``|z|``, where the two terms cancel to far below
    their size) a small ``|E|`` no longer certifies a zero.
    """
    nu = complex(nu)
    _check_order(nu)
    w = _as_w(w)
    s_minus, ds_minus = _series(1.0 - nu, w)
    s_plus, ds_plus = _series(1.0 + nu, w)
    r = cmath.exp(2.0 * nu * (w - LOG2) + log_gamma(1.0 - nu) - log_gamma(1.0 + nu))
    value = s_minus.value - r * s_plus.value
    deriv = ds_minus - r * (2.0 * nu * s_plus.value + ds_plus)
    floor = ROUNDING_UNIT * (s_minus.magnitude + abs(r) * s_plus.magnitude)
    return Residual(value, deriv, (s_minus, s_plus), floor)
