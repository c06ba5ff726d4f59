"""Seeded Monte Carlo experiment engine.

Trials are embarrassingly parallel: trial t of algorithm a draws its rounding
decisions from the Philox stream ``(master_seed, ordinal(a) * 2**32 + t)``,
pre-split before execution, so output is bit-identical serially and with any
thread count.  Datasets come from their own reserved stream of the dataset
seed and are quantized onto the experiment's format grid before any
computation, which makes the exact oracle error purely algorithmic.

Relative errors are suppressed (None) when the exact reference value is zero,
where the notion is undefined; such records carry ``exact_is_zero``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import bounds as bnd
from . import engine
from .fp_core import FpFormat, InvalidInputError, RoundingMode, philox_key, quantize_array
from .oracle import condition_numbers, exact_sum, exact_variance

__all__ = [
    "ALGORITHMS",
    "BiasReport",
    "BoundRecord",
    "DatasetSpec",
    "ExperimentConfig",
    "ExperimentResult",
    "SummaryRecord",
    "TrialRecord",
    "coverage_sweep",
    "empirical_bias",
    "generate_dataset",
    "run_experiment",
    "stagnation_demo",
]

# reserved stream id for dataset generation, disjoint from trial streams
_DATASET_STREAM = 1 << 62

# algorithm id -> (engine kernel, summation scheme, stream ordinal)
ALGORITHMS: dict[str, tuple[str, int, int]] = {
    "sum_recursive": ("sum", engine.SCHEME_RECURSIVE, 0),
    "sum_pairwise": ("sum", engine.SCHEME_PAIRWISE, 1),
    "textbook_recursive": ("textbook", engine.SCHEME_RECURSIVE, 2),
    "textbook_pairwise": ("textbook", engine.SCHEME_PAIRWISE, 3),
    "two_pass_recursive": ("twopass", engine.SCHEME_RECURSIVE, 4),
    "two_pass_pairwise": ("twopass", engine.SCHEME_PAIRWISE, 5),
}


@dataclass(frozen=True)
class DatasetSpec:
    n: int
    interval: tuple[float, float] = (0.0, 1.0)
    seed: int = 0
    distribution: str = "uniform"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidInputError(f"n must be >= 1, got {self.n}")
        lo, hi = self.interval
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise InvalidInputError(f"need finite lo < hi, got {self.interval}")
        if self.distribution != "uniform":
            raise InvalidInputError(f"unsupported distribution {self.distribution!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: DatasetSpec
    fmt: FpFormat = field(default_factory=lambda: FpFormat(24))
    repetitions: int = 30
    algorithms: tuple[str, ...] = ("textbook_recursive",)
    lambdas: tuple[float, ...] = (0.1,)
    master_seed: int = 0
    include_rn: bool = True
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise InvalidInputError("repetitions must be >= 1")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise InvalidInputError(f"unknown algorithm {alg!r}")
        for lam in self.lambdas:
            if not 0.0 < lam < 1.0:
                raise InvalidInputError(f"lambda must be in (0, 1), got {lam}")
        if self.jobs < 1:
            raise InvalidInputError("jobs must be >= 1")


@dataclass(frozen=True)
class TrialRecord:
    algorithm: str
    trial: int
    n: int
    precision: int
    value: float
    rel_error: float | None  # None when the exact value is zero


@dataclass(frozen=True)
class SummaryRecord:
    algorithm: str
    n: int
    precision: int
    u: float
    interval: tuple[float, float]
    dataset_seed: int
    repetitions: int
    exact_value: float
    exact_is_zero: bool
    kappa: float
    k1: float
    k2: float
    sr_mean_value: float
    sr_mean_rel_error: float | None  # error of the mean-of-R value
    mean_trial_rel_error: float | None  # mean of per-trial errors
    rn_value: float | None
    rn_rel_error: float | None
    empirical_bias: float  # mean(value) - exact
    bias_stderr: float
    v_s_hat: float  # empirical variance of the inner sum across trials


@dataclass(frozen=True)
class BoundRecord:
    algorithm: str
    n: int
    precision: int
    u: float
    lam: float
    method: str
    value: float
    holds_with_probability: float
    coverage: float | None  # fraction of trials with error <= value
    by_analogy: bool


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    trials: list[TrialRecord]
    summaries: list[SummaryRecord]
    bounds: list[BoundRecord]


def generate_dataset(spec: DatasetSpec, fmt: FpFormat) -> np.ndarray:
    """n uniform draws on the interval, projected onto fmt's grid."""
    gen = np.random.Generator(
        np.random.Philox(key=philox_key(spec.seed, _DATASET_STREAM))
    )
    lo, hi = spec.interval
    raw = lo + (hi - lo) * gen.random(spec.n)
    return quantize_array(raw, fmt)


def _trial_stream(algorithm: str, trial: int) -> int:
    return (ALGORITHMS[algorithm][2] << 32) | trial


def _run_trials(
    x: np.ndarray,
    fmt: FpFormat,
    algorithm: str,
    repetitions: int,
    master_seed: int,
    jobs: int,
) -> list[engine.AlgorithmOutput]:
    kernel, scheme, _ = ALGORITHMS[algorithm]

    def one(trial: int) -> engine.AlgorithmOutput:
        return engine.run_algorithm(
            x,
            fmt,
            kernel,
            scheme,
            RoundingMode.SR_NEARNESS,
            master_seed,
            _trial_stream(algorithm, trial),
        )

    if jobs == 1:
        return [one(t) for t in range(repetitions)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, range(repetitions)))


def _rel_error(value: float, exact: Fraction, exact_float: float) -> float | None:
    if exact == 0:
        return None
    # exact_float is correctly rounded; its 2^-53 relative slack is far below
    # any error this harness resolves
    return abs(value - exact_float) / abs(exact_float)


def _exact_value(x: np.ndarray, algorithm: str) -> Fraction:
    if ALGORITHMS[algorithm][0] == "sum":
        return exact_sum(x)
    return exact_variance(x)  # equals the two-pass form exactly


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """R SR trials per algorithm plus one RN run, errors, bounds, coverage."""
    x = generate_dataset(cfg.dataset, cfg.fmt)
    n = cfg.dataset.n
    u = cfg.fmt.unit_roundoff
    cond = condition_numbers(x)
    trials: list[TrialRecord] = []
    summaries: list[SummaryRecord] = []
    bound_rows: list[BoundRecord] = []
    for algorithm in cfg.algorithms:
        exact = _exact_value(x, algorithm)
        exact_float = float(exact)
        exact_is_zero = exact == 0
        outputs = _run_trials(x, cfg.fmt, algorithm, cfg.repetitions, cfg.master_seed, cfg.jobs)
        values = np.array([o.value for o in outputs])
        s_hats = np.array([o.s_hat for o in outputs])
        errors = [_rel_error(v, exact, exact_float) for v in values]
        for t, (v, err) in enumerate(zip(values, errors)):
            trials.append(
                TrialRecord(algorithm, t, n, cfg.fmt.precision_bits, float(v), err)
            )
        rn_value = rn_rel = None
        if cfg.include_rn:
            kernel, scheme, _ = ALGORITHMS[algorithm]
            rn_out = engine.run_algorithm(x, cfg.fmt, kernel, scheme, RoundingMode.RN)
            rn_value = rn_out.value
            rn_rel = _rel_error(rn_value, exact, exact_float)
        sr_mean = float(values.mean())
        err_list = [e for e in errors if e is not None]
        summaries.append(
            SummaryRecord(
                algorithm=algorithm,
                n=n,
                precision=cfg.fmt.precision_bits,
                u=u,
                interval=cfg.dataset.interval,
                dataset_seed=cfg.dataset.seed,
                repetitions=cfg.repetitions,
                exact_value=exact_float,
                exact_is_zero=exact_is_zero,
                kappa=cond.kappa,
                k1=cond.k1,
                k2=cond.k2,
                sr_mean_value=sr_mean,
                sr_mean_rel_error=_rel_error(sr_mean, exact, exact_float),
                mean_trial_rel_error=float(np.mean(err_list)) if err_list else None,
                rn_value=rn_value,
                rn_rel_error=rn_rel,
                empirical_bias=sr_mean - exact_float,
                bias_stderr=(
                    float(values.std(ddof=1)) / math.sqrt(len(values))
                    if len(values) > 1
                    else 0.0
                ),
                v_s_hat=float(s_hats.var(ddof=1)) if len(s_hats) > 1 else 0.0,
            )
        )
        for lam in cfg.lambdas:
            q = bnd.BoundQuery(
                n=n, u=u, lam=lam, kappa=cond.kappa, k1=cond.k1, k2=cond.k2
            )
            evaluated = bnd.evaluate_all(q, bnd.methods_for_algorithm(algorithm))
            for method, bv in evaluated.items():
                coverage = None
                if err_list:
                    coverage = float(np.mean([e <= bv.value for e in err_list]))
                bound_rows.append(
                    BoundRecord(
                        algorithm=algorithm,
                        n=n,
                        precision=cfg.fmt.precision_bits,
                        u=u,
                        lam=lam,
                        method=method.value,
                        value=bv.value,
                        holds_with_probability=bv.holds_with_probability,
                        coverage=coverage,
                        by_analogy=bv.by_analogy,
                    )
                )
    return ExperimentResult(cfg, trials, summaries, bound_rows)


@dataclass(frozen=True)
class BiasReport:
    """Empirical bias of one algorithm against the first-order prediction.

    For variance algorithms the prediction is -V(s_hat)/n (textbook) or
    +V(s_hat)/n (two-pass); for plain sums the prediction is zero
    (SR summation is unbiased).
    """

    algorithm: str
    n: int
    u: float
    exact: float
    mean_value: float
    bias: float
    stderr: float
    z_score: float
    v_s_hat: float
    predicted_bias: float | None
    bias_bound: float | None


def empirical_bias(cfg: ExperimentConfig) -> list[BiasReport]:
    """Bias measurement; meaningful for repetitions >= 1e3 (bias is O(n u^2))."""
    x = generate_dataset(cfg.dataset, cfg.fmt)
    n = cfg.dataset.n
    u = cfg.fmt.unit_roundoff
    cond = condition_numbers(x)
    reports = []
    for algorithm in cfg.algorithms:
        exact = float(_exact_value(x, algorithm))
        outputs = _run_trials(x, cfg.fmt, algorithm, cfg.repetitions, cfg.master_seed, cfg.jobs)
        values = np.array([o.value for o in outputs])
        s_hats = np.array([o.s_hat for o in outputs])
        bias = float(values.mean()) - exact
        stderr = float(values.std(ddof=1)) / math.sqrt(len(values))
        v_s_hat = float(s_hats.var(ddof=1))
        kernel = ALGORITHMS[algorithm][0]
        predicted = bound = None
        if kernel == "textbook" and exact > 0.0:
            pred = bnd.textbook_bias_prediction(n, u, exact, cond.k1, v_s_hat)
            predicted, bound = pred.bias, pred.bound
        elif kernel == "twopass" and exact > 0.0:
            pred = bnd.twopass_bias_prediction(n, u, exact, cond.k1, v_s_hat)
            predicted, bound = pred.bias, pred.bound
        elif kernel == "sum":
            predicted = 0.0
        reports.append(
            BiasReport(
                algorithm=algorithm,
                n=n,
                u=u,
                exact=exact,
                mean_value=float(values.mean()),
                bias=bias,
                stderr=stderr,
                z_score=(
                    bias / stderr
                    if stderr > 0.0
                    else (0.0 if bias == 0.0 else math.copysign(math.inf, bias))
                ),
                v_s_hat=v_s_hat,
                predicted_bias=predicted,
                bias_bound=bound,
            )
        )
    return reports


def coverage_sweep(
    cfg: ExperimentConfig,
    n_grid: tuple[int, ...] | None = None,
    lambda_grid: tuple[float, ...] | None = None,
) -> list[ExperimentResult]:
    """One experiment per n-grid point (lambda grids fit in a single run)."""
    base = cfg if lambda_grid is None else replace(cfg, lambdas=tuple(lambda_grid))
    if n_grid is None:
        return [run_experiment(base)]
    results = []
    for n in n_grid:
        results.append(
            run_experiment(replace(base, dataset=replace(base.dataset, n=n)))
        )
    return results


def stagnation_demo(
    n_grid: tuple[int, ...],
    precision: int = 24,
    interval: tuple[float, float] = (1024.0, 1025.0),
    repetitions: int = 30,
    master_seed: int = 0,
    dataset_seed: int = 0,
    jobs: int = 1,
) -> list[ExperimentResult]:
    """Textbook vs two-pass, SR vs RN, over large-offset data: stagnation study."""
    cfg = ExperimentConfig(
        dataset=DatasetSpec(n=n_grid[0], interval=interval, seed=dataset_seed),
        fmt=FpFormat(precision),
        repetitions=repetitions,
        algorithms=("textbook_recursive", "two_pass_recursive"),
        lambdas=(0.1,),
        master_seed=master_seed,
        include_rn=True,
        jobs=jobs,
    )
    return coverage_sweep(cfg, n_grid=n_grid)
