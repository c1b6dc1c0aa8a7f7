"""Newton refinement and continuation of K_nu zeros in the ``w = log z`` plane.

Zeros carry a *label* (``n`` or ``s``) fixed when they are first seeded from an
asymptotic regime; continuation in ``nu`` preserves it and never re-derives it
from position.  Arguments are never folded, so a zero spiralling around the
origin keeps accumulating ``phi`` and its sheet index is always meaningful.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .asymptotics import (
    LARGE_NU_MIN,
    large_nu_zero,
    log_guard_holds,
    log_zero_estimate,
    small_nu_zero_refined,
)
from .airy import S_MAX
from .core import SheetPoint, canonicalize, sheet_index, zero_residual
from .errors import ContinuationStall, MacdonaldError, NoCrossingError, RegimeError

log = logging.getLogger(__name__)

MAX_ITER = 30
RESIDUAL_TOL = 1e-10
JUMP_GUARD = 0.5
STEP_FLOOR = 1.0 / 1024.0
DETOUR_REL_EPS = 1e-3
DETOUR_WIDTH = 0.1
CRITICAL_TOL = 1e-6


@dataclass(frozen=True)
class ZeroRecord:
    label: int
    nu: complex
    w: SheetPoint
    residual_abs: float
    iterations: int
    converged: bool
    function: str = "K"
    residual_floor: float = 0.0
    history: tuple = field(default=(), repr=False, compare=False)

    @property
    def z(self) -> complex:
        return self.w.z

    @property
    def sheet_index(self) -> int:
        return self.w.sheet_index


def refine_zero(
    nu: complex,
    seed: SheetPoint,
    max_iter: int = MAX_ITER,
    tol: float = RESIDUAL_TOL,
    max_step: Optional[float] = None,
    label: int = 1,
    residual: Callable = zero_residual,
) -> ZeroRecord:
    """Newton iteration ``w <- w - E / (dE/dw)`` started at ``seed``.

    Convergence is declared on ``|E| < tol``, provided the rounding floor of
    ``E`` at the final point is itself below ``tol``.  ``max_step`` caps ``|dw|`` per
    iteration (damped Newton).  ``history`` holds one ``(z, E)`` pair per
    evaluated iterate, starting with the seed.  Failure to converge is
    reported through ``converged=False``; errors at the seed propagate.
    """
    nu = complex(nu)
    w = seed.w
    history = []
    res = residual(nu, w)
    it = 0
    while True:
        e = res.value
        history.append((cmath.exp(w), e))
        if abs(e) < tol or it >= max_iter:
            break
        d = res.derivative
        if d == 0 or not cmath.isfinite(d) or not cmath.isfinite(e):
            break
        step = -e / d
        if max_step is not None and abs(step) > max_step:
            step *= max_step / abs(step)
        w_new = w + step
        try:
            res_new = residual(nu, w_new)
        except (OverflowError, ZeroDivisionError, MacdonaldError):
            break
        if not cmath.isfinite(res_new.value):
            break
        w, res = w_new, res_new
        it += 1
    r = abs(res.value)
    converged = bool(cmath.isfinite(res.value) and r < tol and res.floor < tol and it <= max_iter)
    return ZeroRecord(
        label=label,
        nu=nu,
        w=SheetPoint.from_w(w),
        residual_abs=r,
        iterations=it,
        converged=converged,
        residual_floor=res.floor,
        history=tuple(history),
    )


# ---------------------------------------------------------------------------
# paths in the order plane


@dataclass(frozen=True)
class NuPath:
    """A path ``t -> nu(t)``, ``t`` in [0, 1], sampled at ``steps + 1`` nodes.

    ``mode`` is ``"fixed-arg"`` (modulus varies linearly along the ray through
    ``start``), ``"fixed-modulus"`` (argument varies linearly at ``|start|``)
    or ``"segment"`` (straight line).  Where the path runs along the real axis
    it is pushed off by ``i * detour_sign * eps`` with a smooth bump around
    integers, where the ascending series is not usable, and around the traced
    zero's branch point ``label - 1/2``.  ``eps`` defaults to ``1e-3 |nu|``.
    """

    mode: str
    start: complex
    end: complex
    steps: int
    detour_sign: str = "+"
    detour_epsilon: Optional[float] = None

    def __post_init__(self):
        if self.mode not in ("fixed-arg", "fixed-modulus", "segment"):
            raise ValueError(f"unknown path mode {self.mode!r}")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.start == self.end:
            raise ValueError("path start and end coincide")
        if self.detour_sign not in ("+", "-"):
            raise ValueError("detour_sign must be '+' or '-'")
        if self.detour_epsilon is not None and self.detour_epsilon <= 0:
            raise ValueError("detour_epsilon must be positive")

    @classmethod
    def fixed_arg(cls, arg: float, mod_start: float, mod_end: float, steps: int, **kw) -> "NuPath":
        return cls("fixed-arg", cmath.rect(mod_start, arg), cmath.rect(mod_end, arg), steps, **kw)

    @classmethod
    def fixed_modulus(cls, mod: float, arg_start: float, arg_end: float, steps: int, **kw) -> "NuPath":
        return cls("fixed-modulus", cmath.rect(mod, arg_start), cmath.rect(mod, arg_end), steps, **kw)

    @classmethod
    def segment(cls, start: complex, end: complex, steps: int, **kw) -> "NuPath":
        return cls("segment", complex(start), complex(end), steps, **kw)

    def reversed(self) -> "NuPath":
        return replace(self, start=self.end, end=self.start)

    def base_nu(self, t: float) -> complex:
        if self.mode == "fixed-arg":
            r = abs(self.start) + t * (abs(self.end) - abs(self.start))
            return cmath.rect(r, cmath.phase(self.start))
        if self.mode == "fixed-modulus":
            a0, a1 = cmath.phase(self.start), cmath.phase(self.end)
            return cmath.rect(abs(self.start), a0 + t * (a1 - a0))
        return self.start + t * (self.end - self.start)

    def modulus_at(self, t: float) -> float:
        return abs(self.base_nu(t))

    def nu_at(self, t: float, label: Optional[int] = None) -> complex:
        nu = self.base_nu(t)
        eps = self.detour_epsilon if self.detour_epsilon is not None else DETOUR_REL_EPS * abs(nu)
        if abs(nu.imag) >= eps:
            return nu
        x = nu.real
        d = abs(x - round(x))
        if label is not None:
            d = min(d, abs(x - (label - 0.5)))
        if d >= DETOUR_WIDTH:
            return nu
        bump = math.cos(0.5 * math.pi * d / DETOUR_WIDTH) ** 2
        sign = 1.0 if self.detour_sign == "+" else -1.0
        return complex(x, nu.imag + sign * eps * bump)


@dataclass
class Trajectory:
    path: NuPath
    label: int
    records: list = field(default_factory=list)
    params: list = field(default_factory=list)
    left_principal_at: Optional[complex] = None

    def _append(self, t: float, rec: ZeroRecord) -> None:
        if (
            self.left_principal_at is None
            and self.records
            and rec.sheet_index != 0
            and any(r.sheet_index == 0 for r in self.records)
        ):
            self.left_principal_at = rec.nu
        self.records.append(rec)
        self.params.append(t)


# ---------------------------------------------------------------------------
# seeding


def _no_regime(nu: complex, label: int) -> RegimeError:
    return RegimeError(
        f"no asymptotic regime for nu = {nu}, label {label}: "
        f"|nu| = {abs(nu):.4g} (small < 1, large >= {LARGE_NU_MIN:g} with label <= {S_MAX}), "
        f"log-estimate guard {'holds' if log_guard_holds(nu, label) else 'fails'}"
    )


def initial_guess(nu: complex, label: int) -> SheetPoint:
    """Seed for zero ``label`` of ``K_nu`` from the applicable asymptotic regime.

    In the intermediate band ``1 <= |nu| < 5`` (when the logarithmic estimate
    does not apply) the zero is carried in from ``|nu| = 5`` by continuation at
    fixed ``arg nu``.
    """
    if not isinstance(label, int) or label < 1:
        raise RegimeError(f"zero label must be a positive integer, got {label!r}")
    order = canonicalize(nu)
    c = order.canonical_nu
    m = abs(c)
    if m == 0:
        raise RegimeError("order must be nonzero")
    if m < 1.0:
        seed = small_nu_zero_refined(c, label)
    elif log_guard_holds(c, label):
        seed = log_zero_estimate(c, label)
    elif m >= LARGE_NU_MIN and label <= S_MAX:
        seed = large_nu_zero(c, label)
    elif m < LARGE_NU_MIN:
        # a hair above the threshold so rounding cannot drop |start| below it
        start = cmath.rect(LARGE_NU_MIN * (1.0 + 1e-12), cmath.phase(c))
        if log_guard_holds(start, label):
            start_seed = log_zero_estimate(start, label)
        elif label <= S_MAX:
            start_seed = large_nu_zero(start, label)
        else:
            raise _no_regime(c, label)
        steps = max(8, math.ceil((LARGE_NU_MIN - m) / 0.05))
        path = NuPath("fixed-arg", start, c, steps)
        traj = trace_trajectory(path, label, seed=start_seed)
        seed = traj.records[-1].w
    else:
        raise _no_regime(c, label)
    return seed.conjugate() if order.conj_applied else seed


def find_zero(nu: complex, label: int, seed: Optional[SheetPoint] = None, **kw) -> ZeroRecord:
    """Seed (unless ``seed`` is given) and refine zero ``label`` of ``K_nu``."""
    if seed is None:
        seed = initial_guess(nu, label)
    return refine_zero(nu, seed, label=label, **kw)


# ---------------------------------------------------------------------------
# continuation


def _try_step(nu: complex, seed: complex, w_prev: complex, label: int) -> Optional[ZeroRecord]:
    try:
        rec = refine_zero(nu, SheetPoint.from_w(seed), label=label)
    except (MacdonaldError, OverflowError, ZeroDivisionError, ValueError):
        return None
    if not rec.converged or abs(rec.w.w - w_prev) > JUMP_GUARD:
        return None
    return rec


def trace_trajectory(path: NuPath, label: int, seed: Optional[SheetPoint] = None) -> Trajectory:
    """Follow zero ``label`` along ``path``, recording it at every node.

    Each step is seeded by linear extrapolation (in the path parameter) of the
    last two accepted zeros.  A step that fails to converge, or moves ``w`` by
    more than the jump guard, is halved and retried down to 1/1024 of the
    nominal step; past that a :class:`ContinuationStall` carrying the partial
    trajectory is raised.
    """
    traj = Trajectory(path, label)
    nu0 = path.nu_at(0.0, label)
    if seed is None:
        # seed from the undetoured order: a detour below the real axis must not
        # flip the zero onto its conjugate partner through canonicalization
        seed = initial_guess(path.base_nu(0.0), label)
    first = refine_zero(nu0, seed, label=label)
    if not first.converged:
        raise ContinuationStall(
            f"zero {label} did not converge at the path start nu = {nu0} "
            f"(|E| = {first.residual_abs:.3g})",
            traj,
        )
    traj._append(0.0, first)

    h_nom = 1.0 / path.steps
    h_min = h_nom * STEP_FLOOR
    t_cur, w_cur = 0.0, first.w.w
    t_prev, w_prev = None, None
    h = h_nom
    for i in range(1, path.steps + 1):
        t_node = i / path.steps
        while t_cur < t_node:
            t_try = t_node if t_cur + h >= t_node - 1e-15 else t_cur + h
            if t_prev is None:
                guess = w_cur
            else:
                guess = w_cur + (w_cur - w_prev) * (t_try - t_cur) / (t_cur - t_prev)
            rec = _try_step(path.nu_at(t_try, label), guess, w_cur, label)
            if rec is None:
                h = 0.5 * (t_try - t_cur)
                if h < h_min:
                    raise ContinuationStall(
                        f"continuation of zero {label} stalled near nu = "
                        f"{path.nu_at(t_cur, label)} (t = {t_cur:.6g})",
                        traj,
                    )
                continue
            t_prev, w_prev = t_cur, w_cur
            t_cur, w_cur = t_try, rec.w.w
            h = min(2.0 * h, h_nom)
        traj._append(t_node, rec)
    return traj


# ---------------------------------------------------------------------------
# critical modulus


def find_critical_modulus(
    arg_nu: float,
    label: int,
    bracket: tuple[float, float],
    detour_sign: str = "+",
    tol: float = CRITICAL_TOL,
) -> float:
    """Modulus at which zero ``label`` crosses ``arg z = -pi`` on the ray ``arg nu``.

    The zero is traced inward from ``max(bracket)``; the first node pair that
    straddles ``phi = -pi`` is then bisected in ``|nu|``, each midpoint being
    refined from the interpolated position of the zero.
    """
    lo, hi = sorted(float(b) for b in bracket)
    if lo <= 0 or lo == hi:
        raise ValueError(f"invalid bracket {bracket!r}")
    steps = max(20, math.ceil((hi - lo) / 0.05))
    path = NuPath.fixed_arg(arg_nu, hi, lo, steps, detour_sign=detour_sign)
    traj = trace_trajectory(path, label)

    def gap(rec):
        return rec.w.phi + math.pi

    recs, ts = traj.records, traj.params
    if gap(recs[0]) <= 0:
        raise NoCrossingError(
            f"zero {label} is already past arg z = -pi at |nu| = {hi:g} "
            f"(phi = {recs[0].w.phi:.6g})"
        )
    for k in range(1, len(recs)):
        if gap(recs[k]) <= 0:
            break
    else:
        raise NoCrossingError(
            f"zero {label} stays above arg z = -pi for |nu| in [{lo:g}, {hi:g}] "
            f"(final phi = {recs[-1].w.phi:.6g})"
        )

    ta, wa = ts[k - 1], recs[k - 1].w.w
    tb, wb = ts[k], recs[k].w.w
    if gap(recs[k]) == 0:
        return path.modulus_at(tb)
    while abs(path.modulus_at(tb) - path.modulus_at(ta)) > tol:
        tm = 0.5 * (ta + tb)
        guess = wa + (wb - wa) * (tm - ta) / (tb - ta)
        rec = refine_zero(path.nu_at(tm, label), SheetPoint.from_w(guess), label=label)
        if not rec.converged:
            raise ContinuationStall(f"bisection lost zero {label} at |nu| = {path.modulus_at(tm):.8g}")
        g = gap(rec)
        if g == 0:
            return path.modulus_at(tm)
        if g > 0:
            ta, wa = tm, rec.w.w
        else:
            tb, wb = tm, rec.w.w
    return 0.5 * (path.modulus_at(ta) + path.modulus_at(tb))


# ---------------------------------------------------------------------------
# Hankel zeros


def hankel_zeros_from_macdonald(record: ZeroRecord) -> ZeroRecord:
    """The H^(1)_nu zero obtained by rotating a K_nu zero by +pi/2.

    ``K_nu(z) = (pi i / 2) e^{i nu pi / 2} H^(1)_nu(z e^{i pi / 2})`` on every
    sheet, so ``H^(1)_nu(zeta)`` vanishes where ``K_nu(zeta e^{-i pi/2})`` does;
    the residual is re-evaluated at that rotated-back point.
    """
    if not record.converged:
        raise ValueError("only converged zeros can be rotated")
    if record.function != "K":
        raise ValueError(f"expected a K zero, got {record.function}")
    w_h = record.w.rotated(0.5 * math.pi)
    back = w_h.rotated(-0.5 * math.pi)
    res = zero_residual(record.nu, back)
    r = abs(res.value)
    return replace(
        record,
        w=w_h,
        residual_abs=r,
        residual_floor=res.floor,
        converged=r < RESIDUAL_TOL and res.floor < RESIDUAL_TOL,
        function="H1",
        history=(),
    )


def scan_sheet(
    nu: complex,
    sheet: int,
    rho_range: tuple[float, float] = (-1.5, 1.5),
    n_rho: int = 7,
    n_phi: int = 16,
    dedup_tol: float = 1e-8,
) -> list[ZeroRecord]:
    """Distinct zeros on one sheet reached by Newton from a grid of seeds.

    Seeds cover ``rho_range`` by the whole angular width of the sheet; only
    converged zeros whose argument falls inside the sheet are kept.  This is a
    local search over the seeded annulus, not a certified enumeration.
    """
    lo, hi = rho_range
    found: list[ZeroRecord] = []
    for i in range(n_rho):
        rho = lo + (hi - lo) * i / max(n_rho - 1, 1)
        for j in range(n_phi):
            phi = (2 * sheet - 1) * math.pi + (j + 0.5) * 2.0 * math.pi / n_phi
            rec = refine_zero(nu, SheetPoint(rho, phi))
            if not rec.converged:
                continue
            # zeros sitting on the cut phi = (2k+1)pi belong to sheet k
            if sheet_index(rec.w.phi - dedup_tol) != sheet:
                continue
            if all(abs(rec.w.w - f.w.w) > dedup_tol for f in found):
                found.append(rec)
    return found
