"""Compiled batch kernels for Monte Carlo trials.

The kernels replicate :mod:`srvar.fp_core`'s rounding step for step (same
error-free transformations, same branch structure, same uniform-consumption
discipline) so that a trial run here is bit-identical to the pure-Python
reference path given the same (seed, stream) pair.  Tests enforce the
equivalence on randomized sweeps.

Uniforms are pregenerated per trial from the trial's Philox stream and
consumed lazily: an operation whose exact result is representable consumes
nothing, exactly like the scalar path.  The buffer is sized at the
algorithm's rounding-op count, which upper-bounds consumption.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .fp_core import FpFormat, RoundingMode, philox_key

__all__ = [
    "AlgorithmOutput",
    "MODE_RN",
    "MODE_SR",
    "SCHEME_PAIRWISE",
    "SCHEME_RECURSIVE",
    "max_draws",
    "op_counts",
    "pairwise_height",
    "run_algorithm",
    "uniform_buffer",
    "warm_up",
]

MODE_SR = 0
MODE_RN = 1
SCHEME_RECURSIVE = 0
SCHEME_PAIRWISE = 1

_MIN_NORMAL = 2.2250738585072014e-308
_SPLITTER = 134217729.0  # 2**27 + 1


@njit(inline="always")
def _two_sum_j(a, b):
    s = a + b
    ap = s - b
    bp = s - ap
    return s, (a - ap) + (b - bp)


@njit(inline="always")
def _two_prod_j(a, b):
    p = a * b
    ca = _SPLITTER * a
    ahi = ca - (ca - a)
    alo = a - ahi
    cb = _SPLITTER * b
    bhi = cb - (cb - b)
    blo = b - bhi
    e = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, e


@njit(inline="always")
def _div_pair_j(a, b):
    q = a / b
    ph, pl = _two_prod_j(q, b)
    r = (a - ph) - pl
    return q, r / b


@njit(inline="always")
def _round_pair_j(hi, lo, p, mode, u, idx):
    # twin of fp_core._round_pair; keep the two in lockstep
    if hi == 0.0:
        return 0.0, idx
    if not math.isfinite(hi) or abs(hi) < _MIN_NORMAL:
        raise FloatingPointError("result outside carrier normal range")
    m, e = math.frexp(hi)
    y = math.ldexp(m, p)
    f = math.floor(y)
    if y == f and lo == 0.0:
        return hi, idx
    if y == f:
        bound = float(1 << (p - 1))
        if lo > 0.0:
            if f == -bound:
                gap = math.ldexp(1.0, e - 1 - p)
            else:
                gap = math.ldexp(1.0, e - p)
            lo_val = hi
            hi_val = hi + gap
        else:
            if f == bound:
                gap = math.ldexp(1.0, e - 1 - p)
            else:
                gap = math.ldexp(1.0, e - p)
            lo_val = hi - gap
            hi_val = hi
    else:
        lo_val = math.ldexp(f, e - p)
        hi_val = math.ldexp(f + 1.0, e - p)
        gap = hi_val - lo_val
    big = hi - lo_val
    num = big + lo
    if mode == MODE_RN:
        twice = num + num
        if twice < gap:
            return lo_val, idx
        if twice > gap:
            return hi_val, idx
        t = (big - num) + lo
        if t > 0.0:
            return hi_val, idx
        if t < 0.0:
            return lo_val, idx
        if f % 2 == 0:
            return lo_val, idx
        return hi_val, idx
    prob_up = num / gap
    un = u[idx]
    idx += 1
    if un < prob_up:
        return hi_val, idx
    return lo_val, idx


@njit
def _sum_j(x, p, mode, scheme, u, idx):
    n = x.shape[0]
    if n == 1:
        return x[0], idx
    if scheme == SCHEME_RECURSIVE:
        s = x[0]
        for i in range(1, n):
            hi, lo = _two_sum_j(s, x[i])
            s, idx = _round_pair_j(hi, lo, p, mode, u, idx)
        return s, idx
    size = 1
    while size < n:
        size <<= 1
    buf = np.zeros(size, np.float64)
    buf[:n] = x
    width = size
    while width > 1:
        half = width >> 1
        for i in range(half):
            hi, lo = _two_sum_j(buf[2 * i], buf[2 * i + 1])
            v, idx = _round_pair_j(hi, lo, p, mode, u, idx)
            buf[i] = v
        width = half
    return buf[0], idx


@njit(cache=True, nogil=True)
def sum_kernel(x, p, mode, scheme, u):
    return _sum_j(x, p, mode, scheme, u, 0)


@njit(cache=True, nogil=True)
def textbook_kernel(x, p, mode, scheme, u):
    # phase order: squares, their sum, s-hat, square, divide by n, subtract
    n = x.shape[0]
    idx = 0
    sq = np.empty(n, np.float64)
    for i in range(n):
        hi, lo = _two_prod_j(x[i], x[i])
        v, idx = _round_pair_j(hi, lo, p, mode, u, idx)
        sq[i] = v
    ssq, idx = _sum_j(sq, p, mode, scheme, u, idx)
    shat, idx = _sum_j(x, p, mode, scheme, u, idx)
    hi, lo = _two_prod_j(shat, shat)
    s2, idx = _round_pair_j(hi, lo, p, mode, u, idx)
    hi, lo = _div_pair_j(s2, float(n))
    s2n, idx = _round_pair_j(hi, lo, p, mode, u, idx)
    hi, lo = _two_sum_j(ssq, -s2n)
    yhat, idx = _round_pair_j(hi, lo, p, mode, u, idx)
    return yhat, shat, idx


@njit(cache=True, nogil=True)
def twopass_kernel(x, p, mode, scheme, u):
    # phase order: mean (sum then divide), deviations, squares, final sum
    n = x.shape[0]
    idx = 0
    shat, idx = _sum_j(x, p, mode, scheme, u, idx)
    hi, lo = _div_pair_j(shat, float(n))
    mhat, idx = _round_pair_j(hi, lo, p, mode, u, idx)
    dev = np.empty(n, np.float64)
    for i in range(n):
        hi, lo = _two_sum_j(x[i], -mhat)
        v, idx = _round_pair_j(hi, lo, p, mode, u, idx)
        dev[i] = v
    for i in range(n):
        hi, lo = _two_prod_j(dev[i], dev[i])
        v, idx = _round_pair_j(hi, lo, p, mode, u, idx)
        dev[i] = v
    zhat, idx = _sum_j(dev, p, mode, scheme, u, idx)
    return zhat, mhat, shat, idx


@njit(cache=True, nogil=True)
def mean_kernel(x, p, mode, scheme, u):
    n = x.shape[0]
    shat, idx = _sum_j(x, p, mode, scheme, u, 0)
    hi, lo = _div_pair_j(shat, float(n))
    mhat, idx = _round_pair_j(hi, lo, p, mode, u, idx)
    return mhat, shat, idx


# ---------------------------------------------------------------------------
# op accounting and python-side wrappers
# ---------------------------------------------------------------------------


def pairwise_height(n: int) -> int:
    """Tree height h with 2**h >= n (0 for n == 1)."""
    return int(math.ceil(math.log2(n))) if n > 1 else 0


def _sum_ops(scheme: int, n: int) -> int:
    if n <= 1:
        return 0
    if scheme == SCHEME_RECURSIVE:
        return n - 1
    return (1 << pairwise_height(n)) - 1


def op_counts(algorithm: str, scheme: int, n: int) -> dict[str, int]:
    """Exact rounding-op trace per algorithm; the error models depend on it."""
    s = _sum_ops(scheme, n)
    if algorithm == "sum":
        return {"add": s}
    if algorithm == "mean":
        return {"add": s, "div": 1}
    if algorithm == "textbook":
        return {"mul": n + 1, "add": 2 * s, "div": 1, "sub": 1}
    if algorithm == "twopass":
        return {"add": 2 * s, "div": 1, "sub": n, "mul": n}
    raise ValueError(f"unknown algorithm {algorithm!r}")


def max_draws(algorithm: str, scheme: int, n: int) -> int:
    """Upper bound on uniforms one trial can consume (== total rounding ops)."""
    return sum(op_counts(algorithm, scheme, n).values())


def uniform_buffer(seed: int, stream: int, size: int) -> np.ndarray:
    """The first ``size`` uniforms of the (seed, stream) Philox stream."""
    gen = np.random.Generator(np.random.Philox(key=philox_key(seed, stream)))
    return gen.random(size)


_EMPTY = np.empty(0, np.float64)


@dataclass(frozen=True)
class AlgorithmOutput:
    """One trial's outputs: main value, the inner sum/mean, and draws used."""

    value: float
    s_hat: float
    m_hat: float | None
    draws: int


def run_algorithm(
    x: np.ndarray,
    fmt: FpFormat,
    algorithm: str,
    scheme: int,
    mode: RoundingMode,
    seed: int = 0,
    stream: int = 0,
) -> AlgorithmOutput:
    """Run one trial of ``algorithm`` ('sum', 'mean', 'textbook', 'twopass')."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty input")
    p = fmt.precision_bits
    mcode = MODE_SR if mode is RoundingMode.SR_NEARNESS else MODE_RN
    if mcode == MODE_SR:
        u = uniform_buffer(seed, stream, max_draws(algorithm, scheme, x.size))
    else:
        u = _EMPTY
    if algorithm == "sum":
        value, draws = sum_kernel(x, p, mcode, scheme, u)
        return AlgorithmOutput(value, value, None, draws)
    if algorithm == "mean":
        value, s_hat, draws = mean_kernel(x, p, mcode, scheme, u)
        return AlgorithmOutput(value, s_hat, value, draws)
    if algorithm == "textbook":
        value, s_hat, draws = textbook_kernel(x, p, mcode, scheme, u)
        return AlgorithmOutput(value, s_hat, None, draws)
    if algorithm == "twopass":
        value, m_hat, s_hat, draws = twopass_kernel(x, p, mcode, scheme, u)
        return AlgorithmOutput(value, s_hat, m_hat, draws)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def warm_up() -> None:
    """Force JIT compilation of all kernels (cached across processes)."""
    x = np.array([1.0, 0.5, 0.25])
    u = uniform_buffer(0, 0, 32)
    for scheme in (SCHEME_RECURSIVE, SCHEME_PAIRWISE):
        for mode in (MODE_SR, MODE_RN):
            sum_kernel(x, 8, mode, scheme, u)
            mean_kernel(x, 8, mode, scheme, u)
            textbook_kernel(x, 8, mode, scheme, u)
            twopass_kernel(x, 8, mode, scheme, u)
