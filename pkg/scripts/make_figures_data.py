#!/usr/bin/env python3
"""Regenerate the CSV inputs behind all five study figures.

Writes out/figures/<figure-id>/{trials,summary,bounds}.csv + manifest.json.
The frontend renderer consumes these directories unchanged:

    python scripts/make_figures_data.py --out out/figures
    (cd frontend && npm run figures -- --input ../out/figures --output ../out/svg)
"""

import argparse
import sys
import time

from srvar.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/figures")
    parser.add_argument("--reps", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--figures",
        nargs="+",
        default=["fig2", "fig3_left", "fig3_right", "fig4_left", "fig4_right"],
    )
    args = parser.parse_args()
    for fig in args.figures:
        t0 = time.monotonic()
        code = cli_main(
            [
                "figures-data", fig,
                "--out", args.out,
                "--reps", str(args.reps),
                "--seed", str(args.seed),
            ]
        )
        if code != 0:
            return code
        print(f"{fig}: {time.monotonic() - t0:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
