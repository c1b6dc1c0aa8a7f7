import cmath
import math

import mpmath
import pytest

from macdonald import (
    RangeError,
    RegimeError,
    SheetPoint,
    TransitionCoefficients,
    find_zero,
    hankel_nu_zero,
    initial_guess,
    large_nu_zero,
    log_zero_estimate,
    refine_zero,
    small_nu_zero_crude,
    small_nu_zero_refined,
    theta_s,
)
from macdonald.asymptotics import hankel_z_zero, log_guard_holds
from macdonald.core import EULER_GAMMA

NU21 = 21 * cmath.exp(7j * math.pi / 20)
TABLE_ZEROS = {1: 14.02389461 - 8.67463884j, 2: 10.99983889 - 7.95694795j, 3: 8.82889659 - 7.32655825j}


# --- small order ------------------------------------------------------------


def test_crude_pure_imaginary():
    p = small_nu_zero_crude(0.1j, 1)
    assert p.rho == pytest.approx(-10 * math.pi + math.log(2) - EULER_GAMMA, abs=1e-12)
    assert p.rho == pytest.approx(-31.3000, abs=1e-4)
    assert p.phi == 0


def test_crude_real_order_far_off_sheet():
    p = small_nu_zero_crude(0.1, 1)
    assert p.phi == pytest.approx(-10 * math.pi)
    assert p.sheet_index == -5


def test_crude_direct_arithmetic():
    nu = 0.05 * (1 + 1j) / math.sqrt(2)
    p = small_nu_zero_crude(nu, 2)
    m2 = abs(nu) ** 2
    assert p.rho == pytest.approx(-2 * math.pi * nu.imag / m2 + math.log(2) - EULER_GAMMA)
    assert p.phi == pytest.approx(-2 * math.pi * nu.real / m2)
    q = small_nu_zero_refined(nu, 2)
    assert abs(p.w - q.w) < 0.5 * abs(nu) ** 2


def test_crude_refined_agreement_rate():
    # the offset is -zeta(3) nu^2 / 3 + O(nu^4)
    diffs = []
    for m in (0.1, 0.05, 0.01):
        nu = cmath.rect(m, 0.6)
        d = abs(small_nu_zero_crude(nu, 1).w - small_nu_zero_refined(nu, 1).w)
        assert d <= 0.5 * m**2
        diffs.append(d)
    assert diffs[0] > diffs[1] > diffs[2]


def test_refined_pure_imaginary_is_real_positive():
    p = small_nu_zero_refined(0.1j, 1)
    assert abs(p.phi) < 1e-14


def test_refined_geometric_ratio():
    rhos = [small_nu_zero_refined(0.2j, n).rho for n in range(1, 6)]
    for a, b in zip(rhos, rhos[1:]):
        assert math.exp(b - a) == pytest.approx(math.exp(-math.pi / 0.2), rel=1e-12)


def test_refined_seed_converges():
    nu = 0.3 * cmath.exp(1j * math.pi / 4)
    rec = refine_zero(nu, small_nu_zero_refined(nu, 3), label=3)
    assert rec.converged and rec.residual_abs < 1e-10 and rec.iterations <= 8


def test_small_order_errors():
    with pytest.raises(RangeError):
        small_nu_zero_crude(0, 1)
    with pytest.raises(RangeError):
        small_nu_zero_refined(0.1j, 0)


# --- transition region --------------------------------------------------------


def test_alpha_closed_forms():
    a = float(mpmath.airyaizero(1))
    c = TransitionCoefficients.for_zero(1)
    cbrt2 = 2 ** (1 / 3)
    e_m, e_p = cmath.exp(-2j * math.pi / 3), cmath.exp(2j * math.pi / 3)
    expected = (
        -(3 / 10) * cbrt2**-1 * e_m * a**2,
        -(cbrt2 / 700) * e_p * (a**3 + 10),
        a * (479 * a**3 - 40) / 126000,
        e_m / (cbrt2 * 16170000) * a**2 * (20231 * a**3 + 55100),
    )
    for got, want in zip(c.alpha, expected):
        assert abs(got - want) < 1e-12 * abs(want)


def test_theta_large_order_limit():
    limit = -(2 ** (-1 / 3)) * cmath.exp(-2j * math.pi / 3) * float(mpmath.airyaizero(2))
    assert abs(theta_s(1e12 * cmath.exp(0.4j), 2) - limit) < 1e-7
    assert abs(theta_s(1e3, 2) - limit) > abs(theta_s(1e6, 2) - limit)


def test_theta_grows_with_s():
    mags = [abs(theta_s(NU21, s)) for s in range(1, 11)]
    assert all(a < b for a, b in zip(mags, mags[1:]))


@pytest.mark.parametrize("s, tol", [(1, 2e-3), (2, 5e-3), (3, 1e-2)])
def test_large_order_seed_quality(s, tol):
    seed = large_nu_zero(NU21, s)
    z = TABLE_ZEROS[s]
    assert abs(seed.z - z) / abs(z) < tol
    assert seed.is_principal
    rec = refine_zero(NU21, seed, label=s)
    assert rec.converged and rec.iterations <= 8
    assert abs(rec.z - z) < 1e-7


def test_large_order_errors():
    with pytest.raises(RangeError):
        theta_s(4.0 + 1j, 1)
    with pytest.raises(RangeError):
        large_nu_zero(NU21, 11)
    with pytest.raises(RangeError):
        large_nu_zero(NU21.conjugate(), 1)


# --- Hankel reversion ----------------------------------------------------------


@pytest.mark.parametrize("s", [1, 3])
def test_hankel_round_trip_order(s):
    errs = []
    for m in (100.0, 200.0, 400.0):
        z = SheetPoint.from_z(m * cmath.exp(0.2j))
        nu = hankel_nu_zero(z, s)
        err = abs(hankel_z_zero(nu, s) - z.z)
        assert err * m**3 < 1.0
        errs.append(err)
    # halving 1/|z| cuts the error by about 8
    assert errs[0] / errs[1] > 6 and errs[1] / errs[2] > 6


def test_hankel_leading_terms_dominate():
    nu = hankel_nu_zero(SheetPoint.from_z(50.0), 1)
    lead = 50 + 2 ** (-1 / 3) * cmath.exp(-2j * math.pi / 3) * float(mpmath.airyaizero(1)) * 50 ** (1 / 3)
    assert abs(nu - lead) < 0.05 * abs(lead - 50)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_hankel_rotation_consistency(s):
    h_zero = large_nu_zero(NU21, s).rotated(math.pi / 2)
    assert abs(hankel_nu_zero(h_zero, s) - NU21) < abs(NU21) ** -3


def test_hankel_range():
    with pytest.raises(RangeError):
        hankel_nu_zero(SheetPoint.from_z(4.0), 1)


# --- logarithmic estimate ---------------------------------------------------------


def test_log_estimate_pure_imaginary():
    # n = 1, 2 sit too close to |nu| for the guard
    for n in range(3, 10):
        p = log_zero_estimate(10j, n)
        assert abs(p.phi) < 1e-14
        assert p.z.real == pytest.approx(20 * math.exp(-1 - (n - 0.25) * math.pi / 10), rel=1e-13)
    r = [log_zero_estimate(10j, n).z.real for n in range(3, 10)]
    for a, b in zip(r, r[1:]):
        assert b / a == pytest.approx(math.exp(-math.pi / 10), rel=1e-13)


def test_log_estimate_round_trip():
    nu = 15 * cmath.exp(2j * math.pi / 5)
    rec = refine_zero(nu, log_zero_estimate(nu, 12), label=12)
    assert rec.converged and rec.residual_abs < 1e-10
    assert abs(rec.z) < abs(nu) / 3


def test_log_estimate_regimes():
    with pytest.raises(RegimeError):
        log_zero_estimate(5.0, 3)
    with pytest.raises(RegimeError):
        log_zero_estimate(NU21, 1)
    assert not log_guard_holds(NU21, 1)
    assert log_guard_holds(10j, 3)
    log_zero_estimate(NU21, 1, enforce_guard=False)


@pytest.mark.parametrize("s", [4, 5])
def test_labels_coincide_across_regimes(s):
    # the guard rejects these at |nu| = 21, so it is bypassed to compare
    # regimes; the log seed is ~0.5 off and plain Newton overshoots from there
    a = refine_zero(NU21, large_nu_zero(NU21, s), label=s)
    b = refine_zero(NU21, log_zero_estimate(NU21, s, enforce_guard=False), label=s, max_step=0.05)
    assert a.converged and b.converged
    assert abs(a.w.w - b.w.w) < 1e-9


# --- symmetry of seeds ----------------------------------------------------------


@pytest.mark.parametrize("nu, label", [(0.3 + 0.4j, 2), (10j, 4), (NU21, 1)])
def test_seeds_follow_order_symmetry(nu, label):
    base = initial_guess(nu, label)
    assert initial_guess(-nu, label) == base
    conj = initial_guess(nu.conjugate(), label)
    assert conj == base.conjugate()
    assert initial_guess(-nu.conjugate(), label) == base.conjugate()
    rec = find_zero(nu.conjugate(), label)
    assert rec.converged
    assert abs(rec.w.w - find_zero(nu, label).w.w.conjugate()) < 1e-9
