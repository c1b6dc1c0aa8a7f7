"""Zeros of the Macdonald function K_nu(z) for complex order nu."""

from .airy import airy_ai, airy_ai_prime, airy_zero, airy_zero_table
from .asymptotics import (
    TransitionCoefficients,
    hankel_nu_zero,
    large_nu_zero,
    log_zero_estimate,
    small_nu_zero_crude,
    small_nu_zero_refined,
    theta_s,
)
from .core import (
    Order,
    SeriesResult,
    SheetPoint,
    canonicalize,
    gamma_ratio,
    kummer_series,
    log_gamma,
    macdonald_k,
    zero_residual,
)
from .errors import (
    ContinuationStall,
    DegeneratePochhammerError,
    IntegerOrderError,
    MacdonaldError,
    NoCrossingError,
    PoleError,
    RangeError,
    RegimeError,
)
from .solver import (
    NuPath,
    Trajectory,
    ZeroRecord,
    find_critical_modulus,
    find_zero,
    hankel_zeros_from_macdonald,
    initial_guess,
    refine_zero,
    scan_sheet,
    trace_trajectory,
)

__version__ = "0.1.0"
