"""Shared test helpers: exact-rational oracles independent of the library."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest


def fraction_grid_exponent(ax: Fraction) -> int:
    """Exponent e with 2**(e-1) <= ax < 2**e, for ax > 0, exactly."""
    e = ax.numerator.bit_length() - ax.denominator.bit_length()
    # bit_length gives e within one; fix up with exact comparisons
    while Fraction(2) ** e <= ax:
        e += 1
    while Fraction(2) ** (e - 1) > ax:
        e -= 1
    return e


def fraction_neighbors(x: Fraction, p: int) -> tuple[Fraction, Fraction]:
    """Grid neighbors of x on the p-bit grid, computed in exact rationals."""
    if x == 0:
        return Fraction(0), Fraction(0)
    if x < 0:
        lo, hi = fraction_neighbors(-x, p)
        return -hi, -lo
    e = fraction_grid_exponent(x)
    spacing = Fraction(2) ** (e - p)
    f = x / spacing
    floor_f = f.numerator // f.denominator
    lo = floor_f * spacing
    hi = lo if lo == x else lo + spacing
    return lo, hi


def fraction_up_probability(x: Fraction, p: int) -> Fraction:
    lo, hi = fraction_neighbors(x, p)
    if lo == hi:
        return Fraction(0)
    return (x - lo) / (hi - lo)


def exact_op(a: float, b: float, op: str) -> Fraction:
    fa, fb = Fraction(a), Fraction(b)
    if op == "add":
        return fa + fb
    if op == "sub":
        return fa - fb
    if op == "mul":
        return fa * fb
    if op == "div":
        return fa / fb
    raise ValueError(op)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
