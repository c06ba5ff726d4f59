"""Exact reference values over dyadic inputs, forward errors, conditioning.

Every binary floating-point value is a dyadic rational, so sums, means, and
both variance formulas are computed exactly with arbitrary-precision
rationals; the oracle contributes no error of its own.  The textbook and
two-pass formulas agree exactly on every input (algebraic identity), which
is what makes a single exact value usable as the reference for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .fp_core import InvalidInputError

__all__ = [
    "ConditionReport",
    "ExactZeroError",
    "Moments",
    "condition_numbers",
    "empirical_moments",
    "exact_mean",
    "exact_sum",
    "exact_variance",
    "exact_variance_two_pass",
    "relative_error",
]


class ExactZeroError(InvalidInputError):
    """Relative error requested against an exact value of zero."""


def _scaled_ints(x: Sequence[float]) -> tuple[list[int], int]:
    """Integers k_i and shift q with x_i = k_i / 2**q exactly.

    Every finite float is a dyadic rational, so a common power-of-two
    denominator always exists; integer arithmetic then keeps million-element
    oracles exact and fast (no gcd churn from general rationals).
    """
    ratios = []
    for v in x:
        v = float(v)
        if not math.isfinite(v):
            raise InvalidInputError(f"input must be finite, got {v!r}")
        ratios.append(v.as_integer_ratio())
    if not ratios:
        raise InvalidInputError("empty input")
    q = max(den.bit_length() - 1 for _, den in ratios)  # den is a power of two
    ks = [num << (q - (den.bit_length() - 1)) for num, den in ratios]
    return ks, q


def exact_sum(x: Sequence[float]) -> Fraction:
    ks, q = _scaled_ints(x)
    return Fraction(sum(ks), 1 << q)


def exact_mean(x: Sequence[float]) -> Fraction:
    ks, q = _scaled_ints(x)
    return Fraction(sum(ks), len(ks) << q)


def exact_variance(x: Sequence[float]) -> Fraction:
    """Unnormalized variance, textbook form: sum(x_i^2) - s^2/n."""
    ks, q = _scaled_ints(x)
    n = len(ks)
    s = sum(ks)
    return Fraction(n * sum(k * k for k in ks) - s * s, n << (2 * q))


def exact_variance_two_pass(x: Sequence[float]) -> Fraction:
    """Unnormalized variance, two-pass form: sum((x_i - m)^2)."""
    ks, q = _scaled_ints(x)
    n = len(ks)
    s = sum(ks)
    # x_i - m = (n*k_i - s) / (n * 2**q)
    return Fraction(sum((n * k - s) ** 2 for k in ks), n * n << (2 * q))


def relative_error(approx: float, exact: Fraction | float | int) -> float:
    """|approx - exact| / |exact| evaluated in rational arithmetic."""
    exact = Fraction(exact)
    if exact == 0:
        raise ExactZeroError("relative error undefined for exact value 0")
    return float(abs(Fraction(float(approx)) - exact) / abs(exact))


@dataclass(frozen=True)
class ConditionReport:
    """Condition numbers kappa = |x|_1/|s|, K1 = |x|_1/sqrt(n*y), K2 = |x|_2/sqrt(y).

    Undefined entries (s == 0 for kappa, y == 0 for K1/K2) are +inf sentinels
    with the corresponding flag set, so degenerate datasets still produce a
    record instead of an error.
    """

    kappa: float
    k1: float
    k2: float
    s_is_zero: bool = False
    y_is_zero: bool = False


def condition_numbers(x: Sequence[float]) -> ConditionReport:
    ks, q = _scaled_ints(x)
    n = len(ks)
    s = sum(ks)
    norm1 = sum(abs(k) for k in ks)
    norm2_sq = sum(k * k for k in ks)
    y = Fraction(n * norm2_sq - s * s, n << (2 * q))
    s_is_zero = s == 0
    y_is_zero = y == 0
    kappa = math.inf if s_is_zero else float(Fraction(norm1, abs(s)))
    if y_is_zero:
        k1 = k2 = math.inf
    else:
        scale = Fraction(1, 1 << q)
        k1 = float(norm1 * scale) / math.sqrt(n * float(y))
        k2 = math.sqrt(float(norm2_sq * scale * scale)) / math.sqrt(float(y))
    return ConditionReport(kappa, k1, k2, s_is_zero, y_is_zero)


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float  # unbiased (divides by R - 1)
    stderr: float


def empirical_moments(samples: Sequence[float]) -> Moments:
    """Sample mean, unbiased sample variance, standard error of the mean."""
    arr = np.asarray(samples, dtype=np.float64)
    if arr.size < 2:
        raise InvalidInputError("need at least 2 samples")
    mean_ = float(arr.mean())
    var = float(arr.var(ddof=1))
    return Moments(mean_, var, math.sqrt(var / arr.size))
