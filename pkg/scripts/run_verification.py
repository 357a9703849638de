#!/usr/bin/env python3
"""Run the verification suite at contract scale with per-check timing.

Equivalent to `fqwords verify` plus wall-clock measurement per check;
writes the same CSV and prints one timed summary line per check.

    python3 scripts/run_verification.py --out results.csv
    python3 scripts/run_verification.py sturmian-saturation --n 100000
"""

import argparse
import sys
import time

from fqwords.checks import CHECKS, SuiteParams, results_to_csv, run_suite


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("checks", nargs="*", metavar="CHECK",
                    help=f"subset of: {', '.join(CHECKS)}")
    ap.add_argument("--n", type=int, default=None,
                    help="prefix/horizon override")
    ap.add_argument("--max-m", type=int, default=None,
                    help="window-length override")
    ap.add_argument("--q", type=int, default=None, help="field order override")
    ap.add_argument("--seed", type=int, default=None, help="RNG seed override")
    ap.add_argument("--out", default=None, help="CSV destination")
    args = ap.parse_args(argv)

    kwargs = {"n": args.n, "max_m": args.max_m, "q": args.q}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    params = SuiteParams(**kwargs)

    names = args.checks or list(CHECKS)
    results = []
    total = 0.0
    for name in names:
        t0 = time.perf_counter()
        batch = run_suite([name], params)
        dt = time.perf_counter() - t0
        total += dt
        results.extend(batch)
        print(f"{dt:7.2f}s {batch[0].summary()}", flush=True)
    print(f"total {total:.1f}s")

    if args.out:
        with open(args.out, "w") as fh:
            fh.write(results_to_csv(results))
    return 1 if any(r.status == "fail" for r in results) else 0


if __name__ == "__main__":
    sys.exit(main())
