"""Regenerate the bundled table of Riemann zeta zero ordinates.

Writes fixtures/zeros1e4.txt: one positive ordinate per line, ascending,
covering every nontrivial zero with 0 < Im(rho) <= HEIGHT + MARGIN.  The
library itself never computes zeros; it only ingests tables like this one,
so the generator lives here as a script rather than in the package.

Runtime is roughly half an hour on one core.  The script appends as it
goes and can be re-run to resume after an interruption.
"""

import argparse
import os
import sys

import mpmath as mp

HEIGHT = 10_000.0
MARGIN = 10.0
DIGITS = 12


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        default=os.path.join(os.path.dirname(__file__), "..", "fixtures", "zeros1e4.txt"),
    )
    parser.add_argument("--height", type=float, default=HEIGHT + MARGIN)
    args = parser.parse_args()

    mp.mp.dps = 20
    path = os.path.abspath(args.out)

    done = 0
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as handle:
            for done, _ in enumerate(handle, start=1):
                pass

    mode = "a" if done else "w"
    with open(path, mode, encoding="utf-8") as handle:
        n = done
        while True:
            n += 1
            gamma = mp.zetazero(n).imag
            if gamma > args.height:
                break
            handle.write(mp.nstr(gamma, DIGITS, strip_zeros=False) + "\n")
            if n % 200 == 0:
                handle.flush()
                print(f"{n} zeros, height {mp.nstr(gamma, 8)}", file=sys.stderr)
    print(f"wrote {n - 1} ordinates to {path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
