"""Reduced-precision binary floating-point emulation inside a float64 carrier.

A value is "on the grid" of a format with ``p`` significand bits when it can
be written as ``f * 2**(e - p)`` with ``2**(p-1) <= |f| < 2**p`` (or is zero).
The emulated exponent range is unbounded within the carrier's normal range;
overflow/underflow of the emulated format is intentionally not modeled, but
leaving the carrier's normal range raises :class:`CarrierRangeError`.

Rounding an operation result works on an error-free pair ``(hi, lo)`` with
``hi = fl64(exact)`` and ``exact = hi + lo``:

* add/sub build the pair with TwoSum and mul with Dekker's TwoProduct, so the
  rounding direction and the stochastic-rounding probability are exact (the
  probability picks up at most one carrier rounding when ``lo != 0``);
* div uses the carrier quotient plus the exactly representable residual
  ``a - q*b``, which makes the direction exact and the probability accurate
  to O(2**-53) -- negligible against unit roundoffs u >= 2**-23.

SR-nearness rounds up with probability ``(x - lo)/(hi - lo)`` and is unbiased;
RN rounds to nearest with ties to even.  Representable results are returned
unchanged and consume no randomness in either mode, which keeps random
streams aligned between modes and across padded/non-padded inputs.
"""

from __future__ import annotations

import math
import sys
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "CarrierRangeError",
    "EmulationError",
    "FpFormat",
    "InvalidInputError",
    "RoundingContext",
    "RoundingMode",
    "BINARY32",
    "fl",
    "fl_div_by_int",
    "fl_op",
    "is_representable",
    "neighbors",
    "philox_key",
    "quantize",
    "quantize_array",
    "sample_op",
    "sample_round",
    "sr_probability",
]

_MIN_NORMAL = sys.float_info.min  # 2**-1022
_SPLITTER = 134217729.0  # 2**27 + 1, Veltkamp split constant

MAX_PRECISION = 24
MIN_PRECISION = 2


class EmulationError(Exception):
    """Base class for emulation failures."""


class InvalidInputError(EmulationError, ValueError):
    """Non-finite input, empty input, division by zero, bad precision."""


class CarrierRangeError(EmulationError, OverflowError):
    """A result left the carrier's normal range; out of modeled scope."""


class RoundingMode(Enum):
    SR_NEARNESS = "sr"
    RN = "rn"


@dataclass(frozen=True)
class FpFormat:
    """An emulated binary format with ``precision_bits`` significand bits.

    The cap at 24 bits guarantees that products of two representable values
    are exact in the 53-bit carrier, so SR probabilities for * are computed
    without error (add/sub get the same guarantee from TwoSum residuals).
    """

    precision_bits: int

    def __post_init__(self) -> None:
        if not MIN_PRECISION <= self.precision_bits <= MAX_PRECISION:
            raise InvalidInputError(
                f"precision_bits must be in [{MIN_PRECISION}, {MAX_PRECISION}], "
                f"got {self.precision_bits}"
            )

    @property
    def unit_roundoff(self) -> float:
        """u = 2**(1-p), the worst-case relative error of one rounding."""
        return math.ldexp(1.0, 1 - self.precision_bits)


BINARY32 = FpFormat(24)


def philox_key(seed: int, stream: int) -> int:
    """128-bit Philox key for (seed, stream); distinct pairs give independent streams."""
    return ((seed & 0xFFFFFFFFFFFFFFFF) << 64) | (stream & 0xFFFFFFFFFFFFFFFF)


class RoundingContext:
    """Rounding mode plus a deterministic splittable random stream.

    The stream is counter-based (numpy Philox keyed by ``(seed, stream)``), so
    an identical ``(seed, stream)`` pair replays a bit-identical sequence of
    rounding decisions regardless of process, thread count, or whether
    uniforms are drawn one at a time or in blocks.  RN mode never draws.
    ``op_counts`` and ``draws`` record how many roundings were attempted per
    operation kind and how many uniforms were consumed.
    """

    def __init__(
        self,
        mode: RoundingMode = RoundingMode.SR_NEARNESS,
        seed: int = 0,
        stream: int = 0,
    ) -> None:
        self.mode = mode
        self.seed = int(seed)
        self.stream = int(stream)
        self._gen = np.random.Generator(
            np.random.Philox(key=philox_key(self.seed, self.stream))
        )
        self.draws = 0
        self.op_counts: Counter[str] = Counter()

    def split(self, stream: int) -> "RoundingContext":
        """Independent substream with the same seed and mode."""
        return RoundingContext(self.mode, self.seed, stream)

    def uniform(self) -> float:
        self.draws += 1
        return float(self._gen.random())

    def uniforms(self, size: int) -> np.ndarray:
        self.draws += size
        return self._gen.random(size)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return (
            f"RoundingContext(mode={self.mode.value}, seed={self.seed}, "
            f"stream={self.stream}, draws={self.draws})"
        )


# ---------------------------------------------------------------------------
# error-free transformations
# ---------------------------------------------------------------------------


def _two_sum(a: float, b: float) -> tuple[float, float]:
    """Knuth TwoSum: a + b == s + t exactly (no overflow assumed)."""
    s = a + b
    ap = s - b
    bp = s - ap
    return s, (a - ap) + (b - bp)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    """Dekker TwoProduct via Veltkamp splitting: a * b == p + e exactly."""
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


def _div_pair(a: float, b: float) -> tuple[float, float]:
    """Carrier quotient q and correction (a/b - q) as a float.

    The residual r = a - q*b is exactly representable (standard division
    remainder property), so the sign of the correction is exact; its value
    carries one extra carrier rounding from r/b.
    """
    q = a / b
    ph, pl = _two_prod(q, b)
    r = (a - ph) - pl
    return q, r / b


# ---------------------------------------------------------------------------
# core rounding of an error-free pair
#
# _support and the mode dispatch below mirror engine._round_pair_jit step for
# step; the two implementations must stay bit-identical (enforced by tests).
# ---------------------------------------------------------------------------


def _support(hi: float, lo: float, p: int) -> tuple[float, float, float, float]:
    """Grid interval around the exact value hi + lo, assumed off-grid.

    Returns (lo_val, hi_val, num, gap) where num approximates the distance of
    the exact value from lo_val (exact unless lo != 0 forces one rounding)
    and gap = hi_val - lo_val is a power of two.
    """
    m, e = math.frexp(hi)
    y = math.ldexp(m, p)  # |y| in [2**(p-1), 2**p)
    f = math.floor(y)
    if y == f:
        # hi sits on the grid but lo nudges the exact value off it; at a
        # power of two the inward gap is half the outward one
        bound = float(1 << (p - 1))
        if lo > 0.0:
            gap = math.ldexp(1.0, e - 1 - p) if f == -bound else math.ldexp(1.0, e - p)
            lo_val = hi
            hi_val = hi + gap
        else:
            gap = math.ldexp(1.0, e - 1 - p) if f == bound else math.ldexp(1.0, e - p)
            lo_val = hi - gap
            hi_val = hi
    else:
        lo_val = math.ldexp(f, e - p)
        hi_val = math.ldexp(f + 1.0, e - p)
        gap = hi_val - lo_val
    big = hi - lo_val  # exact (Sterbenz: lo_val <= hi <= 2*lo_val in magnitude)
    num = big + lo
    return lo_val, hi_val, num, gap


def _is_exact(hi: float, lo: float, p: int) -> bool:
    """True when hi + lo is zero or already on the p-bit grid."""
    if hi == 0.0:
        return True
    if lo != 0.0:
        return False
    m, _ = math.frexp(hi)
    y = math.ldexp(m, p)
    return y == math.floor(y)


def _check_range(hi: float) -> None:
    if not math.isfinite(hi) or (hi != 0.0 and abs(hi) < _MIN_NORMAL):
        raise CarrierRangeError(f"result {hi!r} outside carrier normal range")


def _round_pair(hi: float, lo: float, p: int, mode: RoundingMode, ctx) -> float:
    _check_range(hi)
    if hi == 0.0:
        return 0.0
    if _is_exact(hi, lo, p):
        return hi  # representable: identical in every mode, no draw
    lo_val, hi_val, num, gap = _support(hi, lo, p)
    if mode is RoundingMode.RN:
        twice = num + num  # exact doubling
        if twice < gap:
            return lo_val
        if twice > gap:
            return hi_val
        # apparent tie: the single rounding in num may mask the true side
        t = ((hi - lo_val) - num) + lo
        if t > 0.0:
            return hi_val
        if t < 0.0:
            return lo_val
        # true tie: pick the neighbor with even scaled significand
        m, _ = math.frexp(hi)
        f = math.floor(math.ldexp(m, p))
        return lo_val if math.fmod(f, 2.0) == 0.0 else hi_val
    prob_up = num / gap  # gap is a power of two: exact scaling
    return hi_val if ctx.uniform() < prob_up else lo_val


def _check_finite(x: float, what: str = "input") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"{what} must be finite, got {x!r}")
    return x


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def neighbors(x: float, fmt: FpFormat) -> tuple[float, float]:
    """Grid neighbors (lo, hi) of x; lo == hi == x iff x is representable."""
    x = _check_finite(x)
    if x == 0.0:
        return 0.0, 0.0
    _check_range(x)
    p = fmt.precision_bits
    if _is_exact(x, 0.0, p):
        return x, x
    lo_val, hi_val, _, _ = _support(x, 0.0, p)
    return lo_val, hi_val


def is_representable(x: float, fmt: FpFormat) -> bool:
    x = _check_finite(x)
    return _is_exact(x, 0.0, fmt.precision_bits)


def sr_probability(x: float, fmt: FpFormat) -> float:
    """Probability that SR-nearness rounds x up: (x - lo)/(hi - lo), 0 on grid."""
    x = _check_finite(x)
    if x == 0.0 or _is_exact(x, 0.0, fmt.precision_bits):
        return 0.0
    _, _, num, gap = _support(x, 0.0, fmt.precision_bits)
    return num / gap


def fl(x: float, fmt: FpFormat, ctx: RoundingContext) -> float:
    """Round a carrier real onto fmt's grid under ctx's mode."""
    x = _check_finite(x)
    ctx.op_counts["round"] += 1
    return _round_pair(x, 0.0, fmt.precision_bits, ctx.mode, ctx)


def quantize(x: float, fmt: FpFormat) -> float:
    """Round-to-nearest (ties to even) projection of x onto fmt's grid."""
    x = _check_finite(x)
    return _round_pair(x, 0.0, fmt.precision_bits, RoundingMode.RN, None)


def quantize_array(x: np.ndarray, fmt: FpFormat) -> np.ndarray:
    """Vectorized :func:`quantize`; bit-identical to the scalar version."""
    x = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("inputs must be finite")
    if np.any((x != 0.0) & (np.abs(x) < _MIN_NORMAL)):
        raise CarrierRangeError("input below carrier normal range")
    m, e = np.frexp(x)
    f = np.rint(np.ldexp(m, fmt.precision_bits))  # rint ties to even
    return np.ldexp(f, e - fmt.precision_bits) + 0.0  # normalize -0.0


def _op_pair(a: float, b: float, op: str) -> tuple[float, float]:
    if op == "add":
        return _two_sum(a, b)
    if op == "sub":
        return _two_sum(a, -b)
    if op == "mul":
        return _two_prod(a, b)
    if op == "div":
        return _div_pair(a, b)
    raise InvalidInputError(f"unknown op {op!r}")


def fl_op(a: float, b: float, op: str, fmt: FpFormat, ctx: RoundingContext) -> float:
    """Compute ``a op b`` exactly in the carrier, then round onto fmt's grid.

    Both operands must be representable in fmt; division by zero is an error.
    """
    a = _check_finite(a, "operand a")
    b = _check_finite(b, "operand b")
    if not is_representable(a, fmt) or not is_representable(b, fmt):
        raise InvalidInputError("operands must be representable in the format")
    if op == "div" and b == 0.0:
        raise InvalidInputError("division by zero")
    hi, lo = _op_pair(a, b, op)
    ctx.op_counts[op] += 1
    return _round_pair(hi, lo, fmt.precision_bits, ctx.mode, ctx)


def fl_div_by_int(a: float, n: int, fmt: FpFormat, ctx: RoundingContext) -> float:
    """One rounded division of a representable value by an exact integer n.

    Used by the mean and textbook algorithms, whose divisor n need not be
    representable in the emulated format.
    """
    a = _check_finite(a, "operand a")
    if n == 0:
        raise InvalidInputError("division by zero")
    hi, lo = _div_pair(a, float(n))
    ctx.op_counts["div"] += 1
    return _round_pair(hi, lo, fmt.precision_bits, ctx.mode, ctx)


# ---------------------------------------------------------------------------
# vectorized sampling (repeated independent rounding of one fixed value)
# ---------------------------------------------------------------------------


def _sample_pair(
    hi: float, lo: float, fmt: FpFormat, ctx: RoundingContext, size: int
) -> np.ndarray:
    p = fmt.precision_bits
    _check_range(hi)
    if hi == 0.0 or _is_exact(hi, lo, p):
        return np.full(size, 0.0 if hi == 0.0 else hi)
    if ctx.mode is RoundingMode.RN:
        return np.full(size, _round_pair(hi, lo, p, RoundingMode.RN, None))
    lo_val, hi_val, num, gap = _support(hi, lo, p)
    u = ctx.uniforms(size)  # one uniform per draw, same order as scalar calls
    return np.where(u < num / gap, hi_val, lo_val)


def sample_round(
    x: float, fmt: FpFormat, ctx: RoundingContext, size: int
) -> np.ndarray:
    """``size`` independent draws of ``fl(x, fmt, ctx)``.

    Bit-identical to calling :func:`fl` ``size`` times with the same context
    (each inexact rounding consumes exactly one uniform, in order).
    """
    x = _check_finite(x)
    return _sample_pair(x, 0.0, fmt, ctx, size)


def sample_op(
    a: float, b: float, op: str, fmt: FpFormat, ctx: RoundingContext, size: int
) -> np.ndarray:
    """``size`` independent draws of ``fl_op(a, b, op, fmt, ctx)``."""
    a = _check_finite(a, "operand a")
    b = _check_finite(b, "operand b")
    if op == "div" and b == 0.0:
        raise InvalidInputError("division by zero")
    hi, lo = _op_pair(a, b, op)
    return _sample_pair(hi, lo, fmt, ctx, size)
