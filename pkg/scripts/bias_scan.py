"""Scan of the normalized deviation along the pinned-saddle curve x(y).

For each grid point the deviation (Psi/Lambda - 1) * y^(beta0-1/2) * log y
is recorded next to the zero-sum model value when a zero table is given;
the two columns should oscillate around the same constant 1/(2*beta0-1).
Output goes to results/ as CSV plus plot data.
"""

import argparse
import os
import sys

from smoothnum.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--beta0", type=float, default=0.75)
    parser.add_argument("--y-min", type=float, default=1000.0)
    parser.add_argument("--y-max", type=float, default=3800.0)
    parser.add_argument("--n-points", type=int, default=12)
    parser.add_argument("--zeros", default=os.path.join("fixtures", "zeros1e4.txt"))
    parser.add_argument("--T", type=float, default=1000.0)
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    rc = cli_main([
        "bias-scan",
        "--beta0", str(args.beta0),
        "--y-min", str(args.y_min),
        "--y-max", str(args.y_max),
        "--n-points", str(args.n_points),
        "--zeros", args.zeros,
        "--T", str(args.T),
        "--skip-infeasible",
        "--out", os.path.join(args.outdir, "bias_scan.csv"),
        "--plot", os.path.join(args.outdir, "bias_scan"),
    ])
    if rc == 0:
        print(f"wrote {args.outdir}/bias_scan.csv and plot data")
    return rc


if __name__ == "__main__":
    sys.exit(main())
