"""Command-line interface: experiments, bound tables, figure data, inspection.

Subcommands: round, sum, variance, bounds-table, experiment, figures-data.

File outputs (CSV by default, JSON with --format json) use a fixed schema:

* trials.csv   -- algorithm,trial,n,precision,value,rel_error
* summary.csv  -- algorithm,n,precision,u,interval_lo,interval_hi,
                  dataset_seed,repetitions,exact_value,exact_is_zero,
                  kappa,k1,k2,sr_mean_value,sr_mean_rel_error,
                  mean_trial_rel_error,rn_value,rn_rel_error,
                  empirical_bias,bias_stderr,v_s_hat
* bounds.csv   -- algorithm,n,precision,u,lambda,method,value,
                  holds_with_probability,coverage,by_analogy,error

Floats are written as scientific notation with 17 significant digits, which
round-trips carrier doubles losslessly; empty cells mean "undefined here".
Every run writes manifest.json echoing the fully resolved configuration;
feeding a manifest back via --config reproduces the run byte for byte.

Exit codes: 0 success, 2 configuration error, 3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from . import bounds as bnd
from .fp_core import (
    EmulationError,
    FpFormat,
    InvalidInputError,
    RoundingContext,
    RoundingMode,
    neighbors,
    sample_round,
    sr_probability,
)
from .harness import (
    ALGORITHMS,
    DatasetSpec,
    ExperimentConfig,
    ExperimentResult,
    coverage_sweep,
    run_experiment,
)

OUTPUT_DIR_ENV = "SRVAR_OUTPUT_DIR"

TRIALS_COLUMNS = ["algorithm", "trial", "n", "precision", "value", "rel_error"]
SUMMARY_COLUMNS = [
    "algorithm", "n", "precision", "u", "interval_lo", "interval_hi",
    "dataset_seed", "repetitions", "exact_value", "exact_is_zero",
    "kappa", "k1", "k2", "sr_mean_value", "sr_mean_rel_error",
    "mean_trial_rel_error", "rn_value", "rn_rel_error",
    "empirical_bias", "bias_stderr", "v_s_hat",
]
BOUNDS_COLUMNS = [
    "algorithm", "n", "precision", "u", "lambda", "method", "value",
    "holds_with_probability", "coverage", "by_analogy", "error",
]

FIGURE_IDS = ("fig2", "fig3_left", "fig3_right", "fig4_left", "fig4_right")


class ConfigError(Exception):
    """Bad command line or configuration file."""


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.16e}"
    return str(value)


def _write_table(path: Path, columns: list[str], rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        path = path.with_suffix(".json")
        payload = [
            {c: (None if r.get(c) is None else r.get(c)) for c in columns}
            for r in rows
        ]
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt_cell(row.get(c)) for c in columns))
    path.write_text("\n".join(lines) + "\n")


def _trial_rows(results: list[ExperimentResult]) -> list[dict]:
    return [
        {
            "algorithm": t.algorithm,
            "trial": t.trial,
            "n": t.n,
            "precision": t.precision,
            "value": t.value,
            "rel_error": t.rel_error,
        }
        for res in results
        for t in res.trials
    ]


def _summary_rows(results: list[ExperimentResult]) -> list[dict]:
    rows = []
    for res in results:
        for s in res.summaries:
            rows.append(
                {
                    "algorithm": s.algorithm,
                    "n": s.n,
                    "precision": s.precision,
                    "u": s.u,
                    "interval_lo": s.interval[0],
                    "interval_hi": s.interval[1],
                    "dataset_seed": s.dataset_seed,
                    "repetitions": s.repetitions,
                    "exact_value": s.exact_value,
                    "exact_is_zero": s.exact_is_zero,
                    "kappa": s.kappa,
                    "k1": s.k1,
                    "k2": s.k2,
                    "sr_mean_value": s.sr_mean_value,
                    "sr_mean_rel_error": s.sr_mean_rel_error,
                    "mean_trial_rel_error": s.mean_trial_rel_error,
                    "rn_value": s.rn_value,
                    "rn_rel_error": s.rn_rel_error,
                    "empirical_bias": s.empirical_bias,
                    "bias_stderr": s.bias_stderr,
                    "v_s_hat": s.v_s_hat,
                }
            )
    return rows


def _bound_rows(results: list[ExperimentResult]) -> list[dict]:
    rows = []
    for res in results:
        for b in res.bounds:
            rows.append(
                {
                    "algorithm": b.algorithm,
                    "n": b.n,
                    "precision": b.precision,
                    "u": b.u,
                    "lambda": b.lam,
                    "method": b.method,
                    "value": b.value,
                    "holds_with_probability": b.holds_with_probability,
                    "coverage": b.coverage,
                    "by_analogy": b.by_analogy,
                    "error": None,
                }
            )
    return rows


def _resolve_out_dir(arg: str | None) -> Path:
    out = arg or os.environ.get(OUTPUT_DIR_ENV) or "srvar_out"
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _config_dict(cfg: ExperimentConfig, output_format: str) -> dict:
    return {
        "dataset": {
            "n": cfg.dataset.n,
            "interval": list(cfg.dataset.interval),
            "seed": cfg.dataset.seed,
            "distribution": cfg.dataset.distribution,
        },
        "precision": cfg.fmt.precision_bits,
        "repetitions": cfg.repetitions,
        "algorithms": list(cfg.algorithms),
        "lambdas": list(cfg.lambdas),
        "master_seed": cfg.master_seed,
        "include_rn": cfg.include_rn,
        "jobs": cfg.jobs,
        "output_format": output_format,
    }


def _write_manifest(out: Path, command: str, config: dict, outputs: list[str]) -> None:
    manifest = dict(config)
    manifest["_meta"] = {
        "command": command,
        "package": "srvar",
        "version": __version__,
        "outputs": outputs,
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )


_CONFIG_KEYS = {
    "dataset", "precision", "repetitions", "algorithms", "lambdas",
    "master_seed", "include_rn", "jobs", "output_format", "_meta",
}
_DATASET_KEYS = {"n", "interval", "seed", "distribution"}


def load_config(path: str) -> tuple[ExperimentConfig, str]:
    """Parse a YAML/JSON experiment config (a manifest is a valid config)."""
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a mapping")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    dataset_raw = raw.get("dataset")
    if not isinstance(dataset_raw, dict):
        raise ConfigError("config needs a 'dataset' section")
    unknown = set(dataset_raw) - _DATASET_KEYS
    if unknown:
        raise ConfigError(f"unknown dataset keys: {sorted(unknown)}")
    try:
        dataset = DatasetSpec(
            n=int(dataset_raw["n"]),
            interval=tuple(float(v) for v in dataset_raw.get("interval", (0.0, 1.0))),
            seed=int(dataset_raw.get("seed", 0)),
            distribution=str(dataset_raw.get("distribution", "uniform")),
        )
        cfg = ExperimentConfig(
            dataset=dataset,
            fmt=FpFormat(int(raw.get("precision", 24))),
            repetitions=int(raw.get("repetitions", 30)),
            algorithms=tuple(raw.get("algorithms", ("textbook_recursive",))),
            lambdas=tuple(float(v) for v in raw.get("lambdas", (0.1,))),
            master_seed=int(raw.get("master_seed", 0)),
            include_rn=bool(raw.get("include_rn", True)),
            jobs=int(raw.get("jobs", 1)),
        )
    except (KeyError, TypeError, ValueError, InvalidInputError) as exc:
        raise ConfigError(f"bad config: {exc}") from exc
    return cfg, str(raw.get("output_format", "csv"))


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    if getattr(args, "seed", None) is not None:
        cfg = replace(cfg, master_seed=args.seed)
    if getattr(args, "reps", None) is not None:
        cfg = replace(cfg, repetitions=args.reps)
    if getattr(args, "precision", None) is not None:
        cfg = replace(cfg, fmt=FpFormat(args.precision))
    if getattr(args, "lambdas", None):
        cfg = replace(cfg, lambdas=tuple(args.lambdas))
    if getattr(args, "jobs", None) is not None:
        cfg = replace(cfg, jobs=args.jobs)
    if getattr(args, "algorithms", None):
        cfg = replace(cfg, algorithms=tuple(args.algorithms))
    if getattr(args, "n", None) is not None:
        cfg = replace(cfg, dataset=replace(cfg.dataset, n=args.n))
    if getattr(args, "interval", None) is not None:
        lo, hi = args.interval
        cfg = replace(cfg, dataset=replace(cfg.dataset, interval=(lo, hi)))
    if getattr(args, "dataset_seed", None) is not None:
        cfg = replace(cfg, dataset=replace(cfg.dataset, seed=args.dataset_seed))
    return cfg


def _write_experiment(
    out: Path, command: str, cfg: ExperimentConfig, results: list[ExperimentResult],
    output_format: str,
) -> None:
    _write_table(out / "trials.csv", TRIALS_COLUMNS, _trial_rows(results), output_format)
    _write_table(out / "summary.csv", SUMMARY_COLUMNS, _summary_rows(results), output_format)
    _write_table(out / "bounds.csv", BOUNDS_COLUMNS, _bound_rows(results), output_format)
    suffix = "json" if output_format == "json" else "csv"
    _write_manifest(
        out, command, _config_dict(cfg, output_format),
        [f"trials.{suffix}", f"summary.{suffix}", f"bounds.{suffix}"],
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_round(args) -> int:
    fmt = FpFormat(args.precision)
    mode = RoundingMode.SR_NEARNESS if args.mode == "sr" else RoundingMode.RN
    ctx = RoundingContext(mode, args.seed)
    lo, hi = neighbors(args.x, fmt)
    prob = sr_probability(args.x, fmt)
    draws = sample_round(args.x, fmt, ctx, args.draws)
    freq_hi = float(np.mean(draws == hi)) if lo != hi else 0.0
    print(f"x            = {args.x:.17g}")
    print(f"precision    = {fmt.precision_bits} (u = {fmt.unit_roundoff:.17g})")
    print(f"neighbors    = ({lo:.17g}, {hi:.17g})")
    print(f"p(round up)  = {prob:.17g}")
    print(f"mode         = {args.mode}")
    print(f"draws        = {args.draws}")
    print(f"freq(hi)     = {freq_hi:.17g}")
    print(f"sample mean  = {float(np.mean(draws)):.17g}")
    return 0


def _single_algorithm_run(args, algorithms: tuple[str, ...]) -> int:
    cfg = ExperimentConfig(
        dataset=DatasetSpec(
            n=args.n, interval=tuple(args.interval), seed=args.dataset_seed
        ),
        fmt=FpFormat(args.precision),
        repetitions=args.reps,
        algorithms=algorithms,
        lambdas=tuple(args.lambdas or (0.1,)),
        master_seed=args.seed,
        include_rn=True,
        jobs=args.jobs,
    )
    res = run_experiment(cfg)
    for s in res.summaries:
        print(f"algorithm          = {s.algorithm}")
        print(f"n, precision       = {s.n}, {s.precision}")
        print(f"exact value        = {s.exact_value:.17g}")
        print(f"kappa, K1, K2      = {s.kappa:.6g}, {s.k1:.6g}, {s.k2:.6g}")
        rn = "n/a" if s.rn_rel_error is None else f"{s.rn_rel_error:.6g}"
        sr = "n/a" if s.sr_mean_rel_error is None else f"{s.sr_mean_rel_error:.6g}"
        tr = "n/a" if s.mean_trial_rel_error is None else f"{s.mean_trial_rel_error:.6g}"
        print(f"RN rel error       = {rn}")
        print(f"SR mean-of-R error = {sr}")
        print(f"SR mean trial err  = {tr}")
    for b in res.bounds:
        cov = "n/a" if b.coverage is None else f"{b.coverage:.3f}"
        print(
            f"bound {b.method:22s} lambda={b.lam:<8g} value={b.value:.6e} "
            f"coverage={cov}"
        )
    if args.out is not None:
        out = _resolve_out_dir(args.out)
        _write_experiment(out, "experiment", cfg, [res], args.format)
        print(f"wrote {out}/trials.csv summary.csv bounds.csv manifest.json")
    return 0


def cmd_sum(args) -> int:
    return _single_algorithm_run(args, (f"sum_{args.scheme}",))


def cmd_variance(args) -> int:
    return _single_algorithm_run(args, (f"{args.algo}_{args.scheme}",))


def _bounds_table_rows(args) -> list[dict]:
    kappa, k1, k2 = args.kappa, args.k1, args.k2
    if args.dataset_n is not None:
        from .harness import generate_dataset
        from .oracle import condition_numbers

        spec = DatasetSpec(
            n=args.dataset_n, interval=tuple(args.interval), seed=args.dataset_seed
        )
        cond = condition_numbers(generate_dataset(spec, FpFormat(args.precision)))
        kappa, k1, k2 = cond.kappa, cond.k1, cond.k2
    u = FpFormat(args.precision).unit_roundoff
    rows = []
    methods = (
        [bnd.Method(m) for m in args.methods] if args.methods else list(bnd.Method)
    )
    for n in args.n:
        for lam in args.lambdas or (0.1,):
            for method in methods:
                row = {
                    "algorithm": None,
                    "n": n,
                    "precision": args.precision,
                    "u": u,
                    "lambda": lam,
                    "method": method.value,
                    "value": None,
                    "holds_with_probability": None,
                    "coverage": None,
                    "by_analogy": None,
                    "error": None,
                }
                try:
                    q = bnd.BoundQuery(n=n, u=u, lam=lam, kappa=kappa, k1=k1, k2=k2)
                    bv = bnd.evaluate(method, q)
                    row.update(
                        value=bv.value,
                        holds_with_probability=bv.holds_with_probability,
                        by_analogy=bv.by_analogy,
                    )
                except bnd.DomainError as exc:  # per-cell error marker
                    row["error"] = str(exc)
                rows.append(row)
    return rows


def cmd_bounds_table(args) -> int:
    rows = _bounds_table_rows(args)
    out = _resolve_out_dir(args.out)
    _write_table(out / "bounds.csv", BOUNDS_COLUMNS, rows, args.format)
    config = {
        "n": list(args.n),
        "lambdas": list(args.lambdas or (0.1,)),
        "precision": args.precision,
        "kappa": args.kappa,
        "k1": args.k1,
        "k2": args.k2,
        "methods": args.methods or [m.value for m in bnd.Method],
    }
    manifest = {"bounds_table": config, "_meta": {
        "command": "bounds-table", "package": "srvar", "version": __version__,
        "outputs": ["bounds.csv" if args.format == "csv" else "bounds.json"],
    }}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    ok = sum(1 for r in rows if r["error"] is None)
    print(f"wrote {out}: {ok}/{len(rows)} cells evaluated")
    return 0 if ok == len(rows) else 3


def cmd_experiment(args) -> int:
    cfg, output_format = load_config(args.config)
    if args.format is not None:
        output_format = args.format
    cfg = _apply_overrides(cfg, args)
    out = _resolve_out_dir(args.out)
    results = [run_experiment(cfg)]
    _write_experiment(out, "experiment", cfg, results, output_format)
    print(f"wrote {out} (n={cfg.dataset.n}, R={cfg.repetitions}, "
          f"algorithms={','.join(cfg.algorithms)})")
    return 0


# canned figure configurations (study protocols)

_FIG_N_GRID = (10**2, 10**3, 10**4, 10**5, 10**6)
_FIG_LAMBDAS = (0.9, 0.5, 0.1, 1e-2, 1e-3, 1e-4, 1e-5)


def _figure_config(figure_id: str, reps: int, seed: int) -> ExperimentConfig:
    base = ExperimentConfig(
        dataset=DatasetSpec(n=10**6, interval=(0.0, 1.0), seed=seed),
        fmt=FpFormat(24),
        repetitions=reps,
        algorithms=("textbook_recursive",),
        lambdas=(0.1,),
        master_seed=seed,
        include_rn=True,
    )
    if figure_id == "fig3_left":
        return base
    if figure_id == "fig3_right":
        return replace(base, lambdas=_FIG_LAMBDAS)
    if figure_id == "fig4_left":
        return replace(
            base,
            dataset=replace(base.dataset, interval=(-1.0, 1.0)),
            algorithms=("textbook_recursive", "two_pass_recursive"),
        )
    if figure_id == "fig4_right":
        return replace(
            base,
            dataset=replace(base.dataset, interval=(1024.0, 1025.0)),
            algorithms=("textbook_recursive", "two_pass_recursive"),
        )
    raise ConfigError(f"unknown figure id {figure_id!r}")


def cmd_figures_data(args) -> int:
    if args.figure_id not in FIGURE_IDS:
        raise ConfigError(
            f"unknown figure id {args.figure_id!r}; choose from {FIGURE_IDS}"
        )
    out = _resolve_out_dir(args.out) / args.figure_id
    out.mkdir(parents=True, exist_ok=True)
    if args.figure_id == "fig2":
        # pure bound curves: AH pairwise vs the comparison bound, kappa = 1
        u = FpFormat(24).unit_roundoff
        rows = []
        for k in range(10, 31):
            n = 2**k
            q = bnd.BoundQuery(n=n, u=u, lam=0.1, kappa=1.0)
            for method in (
                bnd.Method.AH_PAIRWISE_SUM,
                bnd.Method.HI_PAIRWISE_SUM,
                bnd.Method.BC_PAIRWISE_SUM,
            ):
                bv = bnd.evaluate(method, q)
                rows.append(
                    {
                        "algorithm": "sum_pairwise",
                        "n": n,
                        "precision": 24,
                        "u": u,
                        "lambda": 0.1,
                        "method": method.value,
                        "value": bv.value,
                        "holds_with_probability": bv.holds_with_probability,
                        "coverage": None,
                        "by_analogy": bv.by_analogy,
                        "error": None,
                    }
                )
        _write_table(out / "bounds.csv", BOUNDS_COLUMNS, rows, args.format)
        _write_manifest(
            out, f"figures-data {args.figure_id}",
            {"figure": args.figure_id, "kappa": 1.0, "precision": 24,
             "lambda_total": 0.1, "n_grid": [2**k for k in range(10, 31)]},
            ["bounds.csv"],
        )
        print(f"wrote {out}")
        return 0
    cfg = _figure_config(args.figure_id, args.reps, args.seed)
    if args.figure_id == "fig3_right":
        results = coverage_sweep(cfg)
    else:
        results = coverage_sweep(cfg, n_grid=_FIG_N_GRID)
    _write_experiment(out, f"figures-data {args.figure_id}", cfg, results, args.format)
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", default=None, help=f"output dir (default ${OUTPUT_DIR_ENV} or ./srvar_out)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_dataset_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--interval", type=float, nargs=2, default=(0.0, 1.0),
                   metavar=("LO", "HI"))
    p.add_argument("--dataset-seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=24)
    p.add_argument("--seed", type=int, default=0, help="master seed for SR trials")
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--lambda", dest="lambdas", type=float, action="append",
                   metavar="LAMBDA", help="failure probability (repeatable)")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srvar",
        description="Stochastic-rounding emulation, error bounds, and Monte Carlo verification",
    )
    parser.add_argument("--version", action="version", version=f"srvar {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("round", help="inspect one rounding: neighbors, p(x), frequencies")
    p.add_argument("x", type=float)
    p.add_argument("--precision", type=int, default=24)
    p.add_argument("--mode", choices=("sr", "rn"), default="sr")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--draws", type=int, default=10_000)
    p.set_defaults(func=cmd_round)

    p = sub.add_parser("sum", help="seeded SR summation trials on a uniform dataset")
    p.add_argument("--scheme", choices=("recursive", "pairwise"), default="recursive")
    _add_dataset_flags(p)
    _add_common_output(p)
    p.set_defaults(func=cmd_sum, out=None)

    p = sub.add_parser("variance", help="seeded SR variance trials on a uniform dataset")
    p.add_argument("--algo", choices=("textbook", "two_pass"), default="textbook")
    p.add_argument("--scheme", choices=("recursive", "pairwise"), default="recursive")
    _add_dataset_flags(p)
    _add_common_output(p)
    p.set_defaults(func=cmd_variance, out=None)

    p = sub.add_parser("bounds-table", help="evaluate bound formulas on an (n, lambda) grid")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--lambda", dest="lambdas", type=float, action="append")
    p.add_argument("--precision", type=int, default=24)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--k1", type=float, default=1.0)
    p.add_argument("--k2", type=float, default=1.0)
    p.add_argument("--methods", nargs="+", choices=[m.value for m in bnd.Method])
    p.add_argument("--dataset-n", type=int, default=None,
                   help="derive condition numbers from a generated dataset instead")
    p.add_argument("--interval", type=float, nargs=2, default=(0.0, 1.0))
    p.add_argument("--dataset-seed", type=int, default=0)
    _add_common_output(p)
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("experiment", help="full harness run from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--lambda", dest="lambdas", type=float, action="append")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--algorithms", nargs="+", choices=sorted(ALGORITHMS))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--interval", type=float, nargs=2, default=None)
    p.add_argument("--dataset-seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("figures-data", help="canned experiment configs for the study figures")
    p.add_argument("figure_id", choices=FIGURE_IDS)
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    _add_common_output(p)
    p.set_defaults(func=cmd_figures_data)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses code 2 for usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (bnd.DomainError, EmulationError, FloatingPointError) as exc:
        print(f"numerical-domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
