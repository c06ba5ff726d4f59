"""Compiled kernels must be bit-identical to the pure-Python reference path."""

import numpy as np
import pytest

from srvar import engine
from srvar.algorithms import (
    SummationScheme,
    mean,
    pairwise_sum,
    recursive_sum,
    textbook_variance,
    two_pass_variance,
)
from srvar.fp_core import (
    FpFormat,
    RoundingContext,
    RoundingMode,
    quantize_array,
)

SCHEMES = [
    (engine.SCHEME_RECURSIVE, SummationScheme.RECURSIVE),
    (engine.SCHEME_PAIRWISE, SummationScheme.PAIRWISE),
]


def _dataset(rng, n, p, lo=-2.0, hi=3.0):
    fmt = FpFormat(p)
    raw = lo + (hi - lo) * rng.random(n)
    return quantize_array(raw, fmt), fmt


@pytest.fixture(scope="module", autouse=True)
def _warm():
    engine.warm_up()


class TestBitEquality:
    """Randomized sweep: every algorithm, both schemes, both modes."""

    @pytest.mark.parametrize("mode", [RoundingMode.SR_NEARNESS, RoundingMode.RN])
    @pytest.mark.parametrize("ecode,scheme", SCHEMES)
    def test_sum(self, mode, ecode, scheme, rng):
        for case in range(30):
            n = int(rng.integers(1, 50))
            p = int(rng.choice([3, 5, 8, 24]))
            x, fmt = _dataset(rng, n, p)
            seed, stream = int(rng.integers(1 << 30)), case
            out = engine.run_algorithm(x, fmt, "sum", ecode, mode, seed, stream)
            ctx = RoundingContext(mode, seed, stream)
            ref = (
                recursive_sum(x, fmt, ctx)
                if scheme is SummationScheme.RECURSIVE
                else pairwise_sum(x, fmt, ctx)
            )
            assert out.value == ref
            assert out.draws == ctx.draws

    @pytest.mark.parametrize("mode", [RoundingMode.SR_NEARNESS, RoundingMode.RN])
    @pytest.mark.parametrize("ecode,scheme", SCHEMES)
    def test_mean(self, mode, ecode, scheme, rng):
        for case in range(20):
            n = int(rng.integers(1, 40))
            x, fmt = _dataset(rng, n, int(rng.choice([3, 8, 24])))
            seed, stream = int(rng.integers(1 << 30)), 1000 + case
            out = engine.run_algorithm(x, fmt, "mean", ecode, mode, seed, stream)
            ctx = RoundingContext(mode, seed, stream)
            assert out.value == mean(x, fmt, ctx, scheme)
            assert out.draws == ctx.draws

    @pytest.mark.parametrize("mode", [RoundingMode.SR_NEARNESS, RoundingMode.RN])
    @pytest.mark.parametrize("ecode,scheme", SCHEMES)
    def test_textbook(self, mode, ecode, scheme, rng):
        for case in range(20):
            n = int(rng.integers(1, 40))
            x, fmt = _dataset(rng, n, int(rng.choice([3, 8, 24])))
            seed, stream = int(rng.integers(1 << 30)), 2000 + case
            out = engine.run_algorithm(x, fmt, "textbook", ecode, mode, seed, stream)
            ctx = RoundingContext(mode, seed, stream)
            assert out.value == textbook_variance(x, fmt, ctx, scheme)
            assert out.draws == ctx.draws

    @pytest.mark.parametrize("mode", [RoundingMode.SR_NEARNESS, RoundingMode.RN])
    @pytest.mark.parametrize("ecode,scheme", SCHEMES)
    def test_twopass(self, mode, ecode, scheme, rng):
        for case in range(20):
            n = int(rng.integers(1, 40))
            x, fmt = _dataset(rng, n, int(rng.choice([3, 8, 24])))
            seed, stream = int(rng.integers(1 << 30)), 3000 + case
            out = engine.run_algorithm(x, fmt, "twopass", ecode, mode, seed, stream)
            ctx = RoundingContext(mode, seed, stream)
            assert out.value == two_pass_variance(x, fmt, ctx, scheme)
            assert out.draws == ctx.draws

    def test_exponent_gap_cases(self, rng):
        # exercise the TwoSum residual branch inside the kernels
        fmt = FpFormat(24)
        x = np.array([1.0, 2.0**-40, 2.0**-41, -(2.0**-40), 0.5, 2.0**-35] * 3)
        for stream in range(8):
            out = engine.run_algorithm(
                x, fmt, "sum", engine.SCHEME_RECURSIVE, RoundingMode.SR_NEARNESS, 7, stream
            )
            ctx = RoundingContext(RoundingMode.SR_NEARNESS, 7, stream)
            assert out.value == recursive_sum(x, fmt, ctx)
            assert out.draws == ctx.draws


class TestAccounting:
    def test_max_draws_bounds_consumption(self, rng):
        for _ in range(10):
            n = int(rng.integers(2, 60))
            x, fmt = _dataset(rng, n, 3)
            for alg in ("sum", "mean", "textbook", "twopass"):
                for ecode, _scheme in SCHEMES:
                    out = engine.run_algorithm(
                        x, fmt, alg, ecode, RoundingMode.SR_NEARNESS, 5, 5
                    )
                    assert out.draws <= engine.max_draws(alg, ecode, n)

    def test_op_counts_match_scalar_trace(self):
        n = 13
        expected = engine.op_counts("textbook", engine.SCHEME_RECURSIVE, n)
        ctx = RoundingContext(RoundingMode.SR_NEARNESS, 1, 1)
        x = quantize_array(np.linspace(0.1, 1.7, n), FpFormat(8))
        textbook_variance(x, FpFormat(8), ctx)
        assert dict(ctx.op_counts) == expected

    def test_rn_consumes_nothing(self):
        x = quantize_array(np.linspace(0.3, 2.0, 21), FpFormat(8))
        out = engine.run_algorithm(
            x, FpFormat(8), "twopass", engine.SCHEME_PAIRWISE, RoundingMode.RN
        )
        assert out.draws == 0

    def test_trial_reproducibility(self):
        x = quantize_array(np.linspace(0.2, 1.9, 129), FpFormat(11))
        a = engine.run_algorithm(
            x, FpFormat(11), "textbook", engine.SCHEME_PAIRWISE,
            RoundingMode.SR_NEARNESS, 99, 3,
        )
        b = engine.run_algorithm(
            x, FpFormat(11), "textbook", engine.SCHEME_PAIRWISE,
            RoundingMode.SR_NEARNESS, 99, 3,
        )
        assert (a.value, a.s_hat, a.draws) == (b.value, b.s_hat, b.draws)

    def test_pairwise_height(self):
        assert engine.pairwise_height(1) == 0
        assert engine.pairwise_height(2) == 1
        assert engine.pairwise_height(3) == 2
        assert engine.pairwise_height(1024) == 10
        assert engine.pairwise_height(1025) == 11
