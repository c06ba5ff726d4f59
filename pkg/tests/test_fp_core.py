"""Emulated-format rounding: grids, probabilities, determinism, error bounds."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srvar.fp_core import (
    BINARY32,
    CarrierRangeError,
    FpFormat,
    InvalidInputError,
    RoundingContext,
    RoundingMode,
    fl,
    fl_div_by_int,
    fl_op,
    is_representable,
    neighbors,
    quantize,
    quantize_array,
    sample_op,
    sample_round,
    sr_probability,
)

from conftest import exact_op, fraction_neighbors, fraction_up_probability

P3 = FpFormat(3)


def sr_ctx(seed=1, stream=0):
    return RoundingContext(RoundingMode.SR_NEARNESS, seed, stream)


def rn_ctx():
    return RoundingContext(RoundingMode.RN)


class TestFpFormat:
    def test_unit_roundoff(self):
        assert P3.unit_roundoff == 0.25
        assert BINARY32.unit_roundoff == 2.0**-23

    @pytest.mark.parametrize("p", [0, 1, 25, 53])
    def test_precision_out_of_range(self, p):
        with pytest.raises(InvalidInputError):
            FpFormat(p)


class TestNeighbors:
    def test_representable_value(self):
        assert neighbors(1.0, P3) == (1.0, 1.0)

    def test_grid_spacing_at_exponent_zero(self):
        assert neighbors(1.125, P3) == (1.0, 1.25)

    def test_sign_symmetry(self):
        assert neighbors(-1.125, P3) == (-1.25, -1.0)

    def test_zero(self):
        assert neighbors(0.0, P3) == (0.0, 0.0)

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidInputError):
            neighbors(math.inf, P3)
        with pytest.raises(InvalidInputError):
            neighbors(math.nan, P3)

    def test_below_normal_range_rejected(self):
        with pytest.raises(CarrierRangeError):
            neighbors(1e-320, P3)

    @given(
        x=st.floats(
            min_value=1e-300, max_value=1e300, allow_nan=False, allow_infinity=False
        ),
        sign=st.sampled_from([1.0, -1.0]),
        p=st.integers(min_value=2, max_value=24),
    )
    @settings(max_examples=300)
    def test_matches_rational_oracle(self, x, sign, p):
        x = sign * x
        fmt = FpFormat(p)
        lo, hi = neighbors(x, fmt)
        flo, fhi = fraction_neighbors(Fraction(x), p)
        assert Fraction(lo) == flo
        assert Fraction(hi) == fhi
        assert lo <= x <= hi
        assert (lo == hi) == is_representable(x, fmt)


class TestRound:
    def test_midpoint_probability_half(self):
        assert sr_probability(1.125, P3) == 0.5

    def test_quarter_probability(self):
        assert sr_probability(1.0625, P3) == 0.25

    def test_rn_nearest(self):
        assert quantize(1.0625, P3) == 1.0

    def test_rn_ties_to_even(self):
        # 1.125 is the midpoint of (1.0, 1.25); scaled significands 4 and 5
        assert quantize(1.125, P3) == 1.0
        # 1.375 is the midpoint of (1.25, 1.5); scaled significands 5 and 6
        assert quantize(1.375, P3) == 1.5

    def test_representable_consumes_no_randomness(self):
        ctx = sr_ctx()
        assert fl(1.0, P3, ctx) == 1.0
        assert ctx.draws == 0

    def test_rn_mode_consumes_no_randomness(self):
        ctx = rn_ctx()
        fl(1.0625, P3, ctx)
        assert ctx.draws == 0

    def test_two_point_support(self):
        ctx = sr_ctx(seed=3)
        values = {fl(1.0625, P3, ctx) for _ in range(200)}
        assert values == {1.0, 1.25}

    def test_determinism_same_seed_stream(self):
        a = [fl(1.0625, P3, sr_ctx(9, 4)) for _ in range(1)]
        run1 = RoundingContext(RoundingMode.SR_NEARNESS, 9, 4)
        run2 = RoundingContext(RoundingMode.SR_NEARNESS, 9, 4)
        seq1 = [fl(1.0625, P3, run1) for _ in range(64)]
        seq2 = [fl(1.0625, P3, run2) for _ in range(64)]
        assert seq1 == seq2
        other = RoundingContext(RoundingMode.SR_NEARNESS, 9, 5)
        assert [fl(1.0625, P3, other) for _ in range(64)] != seq1
        del a

    def test_sample_round_matches_scalar_stream(self):
        ctx_vec = sr_ctx(seed=77)
        vec = sample_round(1.0625, P3, ctx_vec, 500)
        ctx_sca = sr_ctx(seed=77)
        sca = [fl(1.0625, P3, ctx_sca) for _ in range(500)]
        assert list(vec) == sca
        assert ctx_vec.draws == ctx_sca.draws == 500

    def test_unbiased_midpoint_frequency(self):
        ctx = sr_ctx(seed=101)
        draws = sample_round(1.125, P3, ctx, 100_000)
        freq = float(np.mean(draws == 1.25))
        assert abs(freq - 0.5) <= 4.0 * math.sqrt(0.25 / 100_000)


class TestOps:
    def test_add_probability(self):
        # 1.0 + 0.0625 = 1.0625: up with probability 1/4
        ctx = sr_ctx(seed=5)
        vals = sample_op(1.0, 0.0625, "add", P3, ctx, 200_000)
        freq = float(np.mean(vals == 1.25))
        assert set(np.unique(vals)) == {1.0, 1.25}
        assert abs(freq - 0.25) <= 4.0 * math.sqrt(0.25 * 0.75 / 200_000)

    def test_exact_product_any_mode(self):
        # 2.25 = 1001_2 x 2^-2 needs 4 significand bits; exact at p >= 4,
        # a two-point lottery over {2.0, 2.5} at p = 3
        p4 = FpFormat(4)
        for ctx in (sr_ctx(), rn_ctx()):
            assert fl_op(1.5, 1.5, "mul", p4, ctx) == 2.25
        assert is_representable(2.25, p4)
        assert not is_representable(2.25, P3)
        ctx = sr_ctx(seed=21)
        vals = sample_op(1.5, 1.5, "mul", P3, ctx, 100_000)
        assert set(np.unique(vals)) == {2.0, 2.5}
        assert abs(float(vals.mean()) - 2.25) <= 4.0 * 0.25 / math.sqrt(100_000)

    def test_exact_results_consume_no_randomness(self):
        ctx = sr_ctx()
        fl_op(1.0, 1.0, "add", P3, ctx)
        fl_op(1.5, 1.5, "mul", FpFormat(4), ctx)
        fl_op(1.0, 2.0, "div", P3, ctx)
        assert ctx.draws == 0

    def test_div_unbiased_expectation(self):
        # 1/3 lies between 0.3125 and 0.375 on the p=3 grid
        ctx = sr_ctx(seed=11)
        vals = sample_op(1.0, 3.0, "div", P3, ctx, 1_000_000)
        assert set(np.unique(vals)) == {0.3125, 0.375}
        gap = 0.0625
        se = gap * 0.5 / math.sqrt(1_000_000)
        assert abs(float(vals.mean()) - 1.0 / 3.0) <= 4.0 * se

    def test_div_by_zero(self):
        with pytest.raises(InvalidInputError):
            fl_op(1.0, 0.0, "div", P3, sr_ctx())

    def test_non_representable_operand_rejected(self):
        with pytest.raises(InvalidInputError):
            fl_op(1.0625, 1.0, "add", P3, sr_ctx())

    def test_carrier_overflow_reported(self):
        big = math.ldexp(1.0, 1023)
        with pytest.raises(CarrierRangeError):
            fl_op(big, big, "add", P3, sr_ctx())

    def test_div_by_int_not_representable_divisor(self):
        # 10^6 is not representable at p=3 but is a legal exact divisor
        ctx = rn_ctx()
        out = fl_div_by_int(1.0, 10**6, P3, ctx)
        assert out == quantize(1e-6, P3)

    def test_exponent_gap_add_probability_exact(self):
        # 1.0 + 2^-40 at p=24: the TwoSum residual carries the whole addend
        fmt = BINARY32
        tiny = math.ldexp(1.0, -40)
        ctx = sr_ctx(seed=13)
        vals = sample_op(1.0, tiny, "add", fmt, ctx, 400_000)
        hi = 1.0 + math.ldexp(1.0, -23)
        p_up = Fraction(tiny) / Fraction(math.ldexp(1.0, -23))
        freq = float(np.mean(vals == hi))
        se = math.sqrt(float(p_up) * (1 - float(p_up)) / 400_000)
        assert set(np.unique(vals)) == {1.0, hi}
        assert abs(freq - float(p_up)) <= 5.0 * se


def _random_operands(rng, size):
    """Format values with diverse exponents, including large gaps."""
    exponents = rng.integers(-40, 41, size=size)
    mantissas = rng.random(size) + 0.5
    signs = rng.choice([-1.0, 1.0], size=size)
    return signs * np.ldexp(mantissas, exponents)


class TestPerOpErrorBound:
    """|fl(a op b) - (a op b)| <= u|a op b| for both modes (random sweep)."""

    @pytest.mark.parametrize("mode", [RoundingMode.SR_NEARNESS, RoundingMode.RN])
    def test_relative_error_bound(self, mode, rng):
        n_cases = 4_000
        raw_a = _random_operands(rng, n_cases)
        raw_b = _random_operands(rng, n_cases)
        ops = rng.choice(["add", "sub", "mul", "div"], size=n_cases)
        precisions = rng.integers(2, 25, size=n_cases)
        ctx = RoundingContext(mode, seed=55)
        for i in range(n_cases):
            fmt = FpFormat(int(precisions[i]))
            a = quantize(float(raw_a[i]), fmt)
            b = quantize(float(raw_b[i]), fmt)
            if ops[i] == "div" and b == 0.0:
                continue
            got = fl_op(a, b, str(ops[i]), fmt, ctx)
            exact = exact_op(a, b, str(ops[i]))
            # two-point support against the independent rational oracle
            flo, fhi = fraction_neighbors(exact, fmt.precision_bits)
            assert Fraction(got) in (flo, fhi)
            if exact != 0:
                delta = abs(Fraction(got) - exact) / abs(exact)
                assert delta <= Fraction(fmt.unit_roundoff)
            else:
                assert got == 0.0


class TestSrProbabilityOracle:
    @given(
        x=st.floats(min_value=0.1, max_value=1e6, allow_nan=False),
        p=st.integers(min_value=2, max_value=24),
    )
    @settings(max_examples=300)
    def test_probability_matches_rational_oracle(self, x, p):
        fmt = FpFormat(p)
        got = sr_probability(x, fmt)
        expected = fraction_up_probability(Fraction(x), p)
        assert Fraction(got) == expected  # exact for plain reals


class TestQuantize:
    def test_identity_on_grid(self):
        assert quantize(1.0, BINARY32) == 1.0

    def test_below_midpoint(self):
        assert quantize(1.0625, P3) == 1.0

    def test_binary32_projection(self):
        got = quantize(0.3, BINARY32)
        assert got == float(np.float32(0.3))

    @given(
        mag=st.floats(min_value=1e-300, max_value=1e10, allow_nan=False),
        sign=st.sampled_from([1.0, -1.0, 0.0]),
        p=st.integers(min_value=2, max_value=24),
    )
    @settings(max_examples=200)
    def test_idempotent(self, mag, sign, p):
        fmt = FpFormat(p)
        once = quantize(sign * mag, fmt)
        assert quantize(once, fmt) == once
        assert is_representable(once, fmt)

    def test_array_matches_scalar_including_ties(self, rng):
        for p in (2, 3, 11, 24):
            fmt = FpFormat(p)
            xs = _random_operands(rng, 2_000)
            # inject exact grid points and midpoints to hit tie handling
            grid = quantize_array(xs[:500], fmt)
            mids = (grid[:-1] + quantize_array(xs[1:500], fmt)) / 2.0
            cases = np.concatenate([xs, grid, mids, [0.0]])
            vec = quantize_array(cases, fmt)
            sca = np.array([quantize(float(v), fmt) for v in cases])
            np.testing.assert_array_equal(vec, sca)


class TestContext:
    def test_split_streams_independent(self):
        base = sr_ctx(seed=2024)
        s1 = base.split(1).uniforms(8)
        s2 = base.split(2).uniforms(8)
        assert not np.array_equal(s1, s2)
        again = sr_ctx(seed=2024).split(1).uniforms(8)
        np.testing.assert_array_equal(s1, again)

    def test_op_counts_recorded(self):
        ctx = sr_ctx()
        fl_op(1.0, 1.0, "add", P3, ctx)
        fl_op(1.5, 1.5, "mul", P3, ctx)
        fl_div_by_int(1.0, 3, P3, ctx)
        assert ctx.op_counts == {"add": 1, "mul": 1, "div": 1}
