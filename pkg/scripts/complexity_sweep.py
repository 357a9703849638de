#!/usr/bin/env python3
"""Profile window counts for a batch of sequence specs into one CSV.

    python3 scripts/complexity_sweep.py --n 100000 --max-m 40 --out sweep.csv
    python3 scripts/complexity_sweep.py --seq carlitz:q=2 --seq theta --n 4096 --max-m 12
"""

import argparse
import csv
import sys
import time

from fqwords.complexity import profile_fast
from fqwords.seqspec import parse_sequence_spec

DEFAULT_ZOO = [
    "carlitz:q=2",
    "carlitz:q=3",
    "carlitz:q=4",
    "carlitz:q=5",
    "carlitz:q=9",
    "pi:q=2",
    "pi:q=3",
    "rotation:alpha=(-1+1*sqrt(2))/1",
    "morphic:0->01,1->10;seed=0",
    "cantor",
    "lac:d=2",
    "deb:d=2,e=3",
    "dec:d=2,e=3",
    "theta",
    "r2",
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seq", action="append", default=None,
                    help="sequence spec (repeatable; default: built-in zoo)")
    ap.add_argument("--n", type=int, default=100_000, help="prefix length")
    ap.add_argument("--max-m", type=int, default=40,
                    help="largest window length")
    ap.add_argument("--out", default="-", help="CSV destination")
    args = ap.parse_args(argv)

    out = sys.stdout if args.out == "-" else open(args.out, "w")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["source", "engine", "N", "m", "p_m"])
    for raw in args.seq or DEFAULT_ZOO:
        spec = parse_sequence_spec(raw)
        t0 = time.perf_counter()
        prof = profile_fast(spec.word.prefix(args.n), args.max_m,
                            source=spec.canonical)
        for row in prof.csv_rows():
            writer.writerow(row)
        print(f"{time.perf_counter() - t0:6.2f}s {spec.canonical}",
              file=sys.stderr, flush=True)
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
