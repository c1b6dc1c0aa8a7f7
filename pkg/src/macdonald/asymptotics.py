r"""Closed-form approximations to the z-zeros of K_nu and the nu-zeros of H^(1).

All estimates are returned as :class:`~macdonald.core.SheetPoint` so the sheet
on which a zero sits survives into the Newton refinement.  The order is
assumed to lie in the closed first quadrant ``0 <= arg nu <= pi/2``; powers of
``nu`` use the principal branch.

Regimes
-------
* ``|nu| << 1``: ``small_nu_zero_crude`` / ``small_nu_zero_refined``.
* ``|nu| >> 1``, first few zeros (transition region ``z ~ -i nu``):
  ``theta_s`` / ``large_nu_zero``.
* ``|nu| >> 1``, zeros with ``|z| << |nu|``: ``log_zero_estimate``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .airy import S_MAX, airy_zero_table
from .core import EULER_GAMMA, LOG2, SheetPoint, log_gamma
from .errors import RangeError, RegimeError

LARGE_NU_MIN = 5.0
HANKEL_Z_MIN = 5.0
LOG_REGIME_FACTOR = 1.0 / 3.0

_CBRT2 = 2.0 ** (1.0 / 3.0)
_E_PLUS = cmath.exp(2j * math.pi / 3)  # e^{+2 pi i / 3}
_E_MINUS = cmath.exp(-2j * math.pi / 3)  # e^{-2 pi i / 3}
_ROT_K = -0.5 * math.pi  # z-rotation taking H^(1) zeros to K zeros


def _check_quadrant(nu: complex) -> None:
    if nu.real < 0 or nu.imag < 0:
        raise RangeError(f"order {nu} is outside the first quadrant; canonicalize first")


def _check_label(n, upper=None) -> None:
    if not isinstance(n, int) or n < 1:
        raise RangeError(f"zero label must be a positive integer, got {n!r}")
    if upper is not None and n > upper:
        raise RangeError(f"zero label {n} exceeds the supported maximum {upper}")


# ---------------------------------------------------------------------------
# |nu| << 1


def small_nu_zero_crude(nu: complex, n: int) -> SheetPoint:
    """Leading small-order behaviour: ``rho = -n pi Im(nu)/|nu|^2 + log 2 - gamma``,
    ``phi = -n pi Re(nu)/|nu|^2``."""
    nu = complex(nu)
    _check_label(n)
    m2 = abs(nu) ** 2
    if m2 == 0:
        raise RangeError("order must be nonzero")
    return SheetPoint(
        -n * math.pi * nu.imag / m2 + LOG2 - EULER_GAMMA,
        -n * math.pi * nu.real / m2,
    )


def small_nu_zero_refined(nu: complex, n: int) -> SheetPoint:
    """``log z_n = (-n pi i + log(Gamma(1+nu)/Gamma(1-nu)) / 2) / nu + log 2``.

    The logarithm of the gamma ratio is taken as the difference of log-gammas,
    which is continuous in ``nu`` through 0.
    """
    nu = complex(nu)
    _check_label(n)
    if nu == 0:
        raise RangeError("order must be nonzero")
    half_log_ratio = 0.5 * (log_gamma(1.0 + nu) - log_gamma(1.0 - nu))
    return SheetPoint.from_w((-n * math.pi * 1j + half_log_ratio) / nu + LOG2)


# ---------------------------------------------------------------------------
# transition region


@dataclass(frozen=True)
class TransitionCoefficients:
    """Coefficients ``alpha[j-1]`` of ``eps_s(nu) = sum_j alpha_j nu^(-2j/3)``."""

    s: int
    a_s: float
    alpha: tuple[complex, complex, complex, complex]

    @classmethod
    def for_zero(cls, s: int) -> "TransitionCoefficients":
        _check_label(s, S_MAX)
        a = airy_zero_table()[s]
        alpha = (
            -0.3 / _CBRT2 * _E_MINUS * a**2,
            -_CBRT2 / 700.0 * _E_PLUS * (a**3 + 10.0),
            complex(a * (479.0 * a**3 - 40.0) / 126000.0),
            _E_MINUS / (_CBRT2 * 16170000.0) * a**2 * (20231.0 * a**3 + 55100.0),
        )
        return cls(s, a, alpha)

    def epsilon(self, nu: complex) -> complex:
        nu = complex(nu)
        return sum(c * nu ** (-2.0 * j / 3.0) for j, c in enumerate(self.alpha, start=1))

    def theta(self, nu: complex) -> complex:
        return -_E_MINUS / _CBRT2 * (self.a_s + self.epsilon(nu))


def _check_large(nu: complex, s: int) -> None:
    _check_label(s, S_MAX)
    if abs(nu) < LARGE_NU_MIN:
        raise RangeError(f"|nu| = {abs(nu):g} below the large-order threshold {LARGE_NU_MIN}")


def theta_s(nu: complex, s: int) -> complex:
    nu = complex(nu)
    _check_large(nu, s)
    return TransitionCoefficients.for_zero(s).theta(nu)


def hankel_z_zero(nu: complex, s: int) -> complex:
    """Large-order z-zero ``nu + theta_s nu^(1/3)`` of H^(1)_nu."""
    nu = complex(nu)
    return nu + theta_s(nu, s) * nu ** (1.0 / 3.0)


def large_nu_zero(nu: complex, s: int) -> SheetPoint:
    """Zero s of K_nu for large ``|nu|``: ``exp(-i pi/2) (nu + theta_s nu^(1/3))``.

    The argument is the principal argument of the Hankel zero shifted by
    ``-pi/2``, which keeps it continuous with the ``|nu| -> inf`` limit.
    """
    nu = complex(nu)
    _check_quadrant(nu)
    return SheetPoint.from_z(hankel_z_zero(nu, s)).rotated(_ROT_K)


def hankel_nu_zero(w: SheetPoint, s: int) -> complex:
    """Large-|z| nu-zero s of H^(1)_nu(z), from the reversed transition expansion."""
    _check_label(s, S_MAX)
    if w.rho < math.log(HANKEL_Z_MIN):
        raise RangeError(f"|z| = {math.exp(w.rho):g} below {HANKEL_Z_MIN}")
    a = airy_zero_table()[s]
    lz = w.w

    def zp(p):
        return cmath.exp(p * lz)

    return (
        zp(1.0)
        + _E_MINUS / _CBRT2 * a * zp(1.0 / 3.0)
        + _CBRT2 * _E_PLUS / 60.0 * a**2 * zp(-1.0 / 3.0)
        - (a**3 + 10.0) / 700.0 * zp(-1.0)
        + _E_MINUS / (_CBRT2 * 1134000.0) * a * (281.0 * a**3 + 10440.0) * zp(-5.0 / 3.0)
        - _CBRT2 * _E_PLUS / 2619540000.0 * a**2 * (73769.0 * a**3 + 6624900.0) * zp(-7.0 / 3.0)
    )


# ---------------------------------------------------------------------------
# |z| << |nu|


def log_zero_estimate(nu: complex, n: int, enforce_guard: bool = True) -> SheetPoint:
    """``z_n = exp(-i pi/2) 2 nu exp(-1 - i (n - 1/4) pi / nu)``, built in log form.

    Only meaningful when ``|z_n| << |nu|``; with ``enforce_guard`` the estimate
    is rejected unless ``|z_n| < |nu| / 3``.  Real orders are always rejected.
    """
    nu = complex(nu)
    _check_label(n)
    _check_quadrant(nu)
    if nu == 0 or nu.imag <= 0:
        raise RegimeError("logarithmic estimate needs arg(nu) > 0")
    w = complex(LOG2 - 1.0, _ROT_K) + cmath.log(nu) - 1j * (n - 0.25) * math.pi / nu
    if enforce_guard and w.real >= math.log(LOG_REGIME_FACTOR * abs(nu)):
        raise RegimeError(
            f"|z_{n}| ~ {math.exp(w.real):.4g} is not small against |nu|/3 = {abs(nu) / 3:.4g}"
        )
    return SheetPoint.from_w(w)


def log_guard_holds(nu: complex, n: int) -> bool:
    try:
        log_zero_estimate(nu, n)
    except (RegimeError, RangeError):
        return False
    return True
