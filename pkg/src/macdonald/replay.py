"""Replay of the published Newton runs for the first three zeros at |nu| = 21.

The reference data are the starting points, first-row residuals, final
iterates and row counts of the three printed runs at ``nu = 21 exp(7 pi i/20)``.
The third run starts far enough out that plain Newton escapes, and its printed
iterates show steps clipped at 0.1 per component; the replay therefore caps
``|dw|`` at 0.01, the same step size in ``z`` at these moduli.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .core import SheetPoint, zero_residual
from .solver import ZeroRecord, refine_zero

NU = 21.0 * cmath.exp(7j * math.pi / 20)
MAX_STEP = 0.01
ZERO_ATOL = 5e-8
RESIDUAL_RTOL = 1e-3
ITERATION_SLACK = 2


@dataclass(frozen=True)
class PublishedRun:
    label: int
    seed: complex
    first_residual: complex
    final_z: complex
    rows: int  # printed iterates, seed included


RUNS = (
    PublishedRun(1, 14.0 - 8.6j, -1.27330 - 0.0817656j, 14.02389461 - 8.67463884j, 5),
    PublishedRun(2, 10.9 - 8.0j, -1.51232 - 0.835798j, 10.99983889 - 7.95694795j, 6),
    PublishedRun(3, 8.5 - 7.0j, 0.741241 + 3.45969j, 8.82889659 - 7.32655825j, 10),
)


@dataclass(frozen=True)
class RunCheck:
    run: PublishedRun
    record: ZeroRecord
    first_residual: complex

    @property
    def zero_error(self) -> tuple[float, float]:
        d = self.record.z - self.run.final_z
        return abs(d.real), abs(d.imag)

    @property
    def residual_error(self) -> float:
        return abs(self.first_residual - self.run.first_residual) / abs(self.run.first_residual)

    @property
    def zero_ok(self) -> bool:
        return self.record.converged and max(self.zero_error) <= ZERO_ATOL

    @property
    def residual_ok(self) -> bool:
        return self.residual_error <= RESIDUAL_RTOL

    @property
    def iterations_ok(self) -> bool:
        return abs(self.record.iterations - (self.run.rows - 1)) <= ITERATION_SLACK

    @property
    def passed(self) -> bool:
        return self.zero_ok and self.residual_ok and self.iterations_ok

    def summary(self) -> str:
        z = self.record.z
        ex, ey = self.zero_error
        return (
            f"z{self.run.label}: {'PASS' if self.passed else 'FAIL'}  "
            f"z = {z.real:.8f} {z.imag:+.8f}i  |dRe| = {ex:.1e} |dIm| = {ey:.1e}  "
            f"first-row E rel err = {self.residual_error:.1e}  "
            f"iterations = {self.record.iterations} (published {self.run.rows - 1})"
        )


@dataclass(frozen=True)
class ReplayReport:
    checks: tuple[RunCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [f"Newton replay at nu = 21 exp(7 pi i/20) = {NU.real:.8f} {NU.imag:+.8f}i"]
        out += [c.summary() for c in self.checks]
        out.append("PASS" if self.passed else "FAIL")
        return out


def replay(residual: Callable = zero_residual, max_step: float = MAX_STEP) -> ReplayReport:
    checks = []
    for run in RUNS:
        seed = SheetPoint.from_z(run.seed)
        e0 = residual(NU, seed).value
        rec = refine_zero(NU, seed, max_step=max_step, label=run.label, residual=residual)
        checks.append(RunCheck(run, rec, e0))
    return ReplayReport(tuple(checks))
