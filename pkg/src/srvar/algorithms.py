"""Summation, mean, and variance kernels with canonical rounding-op order.

These are the readable reference implementations built on
:mod:`srvar.fp_core`; :mod:`srvar.engine` provides compiled twins that are
bit-identical (tests enforce it).  Random-stream consumption order is fixed:

* recursive sum: left-to-right, n-1 additions;
* pairwise sum: zero-pad to 2**h, then level by level, left to right within
  a level, 2**h - 1 additions of which only those with an inexact result
  consume a draw (adding an exact zero is always exact);
* textbook variance: squares in index order, their sum, the plain sum, the
  square of the sum, one division by n, one subtraction;
* two-pass variance: mean (sum, then one division by n), all deviations in
  index order, all squares in index order, final sum.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .fp_core import (
    FpFormat,
    InvalidInputError,
    RoundingContext,
    fl_div_by_int,
    fl_op,
)

__all__ = [
    "SummationScheme",
    "VarianceFormula",
    "mean",
    "pairwise_sum",
    "recursive_sum",
    "textbook_variance",
    "two_pass_variance",
]


class SummationScheme(Enum):
    RECURSIVE = "recursive"
    PAIRWISE = "pairwise"


class VarianceFormula(Enum):
    TEXTBOOK = "textbook"
    TWO_PASS = "two_pass"


def _as_floats(x: Sequence[float]) -> list[float]:
    xs = [float(v) for v in x]
    if not xs:
        raise InvalidInputError("empty input")
    return xs


def recursive_sum(x: Sequence[float], fmt: FpFormat, ctx: RoundingContext) -> float:
    """fl(((x1 + x2) + x3) + ... + xn): exactly n-1 rounded additions."""
    xs = _as_floats(x)
    s = xs[0]
    for xi in xs[1:]:
        s = fl_op(s, xi, "add", fmt, ctx)
    return s


def pairwise_sum(x: Sequence[float], fmt: FpFormat, ctx: RoundingContext) -> float:
    """Balanced binary-tree sum over the zero-padded array of length 2**h."""
    xs = _as_floats(x)
    size = 1
    while size < len(xs):
        size <<= 1
    buf = xs + [0.0] * (size - len(xs))
    while len(buf) > 1:
        buf = [
            fl_op(buf[2 * i], buf[2 * i + 1], "add", fmt, ctx)
            for i in range(len(buf) // 2)
        ]
    return buf[0]


def _sum(x: Sequence[float], fmt, ctx, scheme: SummationScheme) -> float:
    if scheme is SummationScheme.RECURSIVE:
        return recursive_sum(x, fmt, ctx)
    return pairwise_sum(x, fmt, ctx)


def mean(
    x: Sequence[float],
    fmt: FpFormat,
    ctx: RoundingContext,
    scheme: SummationScheme = SummationScheme.RECURSIVE,
) -> float:
    """Sum per scheme followed by one rounded division by n."""
    xs = _as_floats(x)
    return fl_div_by_int(_sum(xs, fmt, ctx, scheme), len(xs), fmt, ctx)


def textbook_variance(
    x: Sequence[float],
    fmt: FpFormat,
    ctx: RoundingContext,
    scheme: SummationScheme = SummationScheme.RECURSIVE,
) -> float:
    """Unnormalized variance via sum(x_i^2) - (sum x_i)^2 / n."""
    xs = _as_floats(x)
    n = len(xs)
    squares = [fl_op(xi, xi, "mul", fmt, ctx) for xi in xs]
    sum_sq = _sum(squares, fmt, ctx, scheme)
    s_hat = _sum(xs, fmt, ctx, scheme)
    s2 = fl_op(s_hat, s_hat, "mul", fmt, ctx)
    s2_over_n = fl_div_by_int(s2, n, fmt, ctx)
    return fl_op(sum_sq, s2_over_n, "sub", fmt, ctx)


def two_pass_variance(
    x: Sequence[float],
    fmt: FpFormat,
    ctx: RoundingContext,
    scheme: SummationScheme = SummationScheme.RECURSIVE,
) -> float:
    """Unnormalized variance via sum((x_i - mean)^2)."""
    xs = _as_floats(x)
    m_hat = mean(xs, fmt, ctx, scheme)
    deviations = [fl_op(xi, m_hat, "sub", fmt, ctx) for xi in xs]
    squares = [fl_op(d, d, "mul", fmt, ctx) for d in deviations]
    return _sum(squares, fmt, ctx, scheme)
