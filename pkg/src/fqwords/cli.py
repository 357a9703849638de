"""Command-line front end: generate words, measure complexity, dump
series coefficients, and run the verification suite.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import csv
import sys

import click

from .checks import SuiteParams, results_to_csv, run_suite, summarize
from .complexity import entropy_estimate, profile_fast, profile_naive
from .lacunary import DEPairSpec, collision_scan
from .seqspec import SpecError, parse_sequence_spec, parse_series_expr

_SYMBOLS_PER_LINE = 32


def _parse_spec_or_usage(text):
    try:
        return parse_sequence_spec(text)
    except SpecError as e:
        raise click.UsageError(str(e)) from None


@click.group()
def main():
    """Words over finite fields: generation, complexity, series, checks."""


@main.command()
@click.option("--seq", required=True, help="sequence spec, e.g. carlitz:q=2")
@click.option("--n", "count", type=int, required=True,
              help="number of symbols")
@click.option("--out", type=click.File("w"), default="-")
def gen(seq, count, out):
    """Emit the first N symbols, whitespace-separated."""
    sspec = _parse_spec_or_usage(seq)
    word = sspec.word
    order = word.field.q if word.field is not None else word.alphabet_size
    try:
        symbols = word.prefix(count)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    out.write(f"q={order} n0=0\n")
    for i in range(0, count, _SYMBOLS_PER_LINE):
        chunk = symbols[i : i + _SYMBOLS_PER_LINE]
        out.write(" ".join(str(int(x)) for x in chunk) + "\n")


@main.command()
@click.option("--seq", required=True)
@click.option("--n", "count", type=int, required=True,
              help="prefix length")
@click.option("--max-m", type=int, required=True,
              help="largest window length")
@click.option("--engine", type=click.Choice(["fast", "naive"]),
              default="fast")
@click.option("--out", type=click.File("w"), default="-")
def complexity(seq, count, max_m, engine, out):
    """Window-count profile p(1..M) on an N-symbol prefix, as CSV."""
    sspec = _parse_spec_or_usage(seq)
    profiler = profile_fast if engine == "fast" else profile_naive
    try:
        prof = profiler(sspec.word.prefix(count), max_m,
                        source=sspec.canonical)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["source", "engine", "N", "m", "p_m"])
    for row in prof.csv_rows():
        writer.writerow(row)


@main.command()
@click.argument("expr")
@click.option("--n", "count", type=int, required=True,
              help="largest tail index to print")
@click.option("--out", type=click.File("w"), default="-")
def series(expr, count, out):
    """Coefficients of a series expression as CSV rows n,a_n."""
    try:
        sspec = parse_series_expr(expr)
        built = sspec.build(default_horizon=count)
    except SpecError as e:
        raise click.UsageError(str(e)) from None
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "a_n"])
    for m in range(-built.n0, 0):
        writer.writerow([m, built.principal[m + built.n0]])
    try:
        tail = built.tail.prefix(count + 1)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    for m in range(count + 1):
        writer.writerow([m, int(tail[m])])


@main.command()
@click.argument("checks", nargs=-1)
@click.option("--q", type=int, default=None, help="field order override")
@click.option("--n", type=int, default=None, help="prefix/horizon override")
@click.option("--max-m", type=int, default=None,
              help="window-length override")
@click.option("--seed", type=int, default=None, help="RNG seed override")
@click.option("--workers", type=int, default=1,
              help="parallel worker threads")
@click.option("--out", type=click.File("w"), default="-",
              help="CSV destination (summary goes to stderr)")
def verify(checks, q, n, max_m, seed, workers, out):
    """Run named verification checks (all when none are given)."""
    kwargs = {"n": n, "max_m": max_m, "q": q}
    if seed is not None:
        kwargs["seed"] = seed
    try:
        results = run_suite(list(checks) or None, SuiteParams(**kwargs),
                            workers=workers)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    click.echo(summarize(results), err=True)
    out.write(results_to_csv(results))
    if any(r.status == "fail" for r in results):
        sys.exit(1)


@main.command()
@click.option("--seq", required=True)
@click.option("--n", "count", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--base", type=int, required=True)
def entropy(seq, count, m, base):
    """log_base(p(m))/m measured on an N-symbol prefix."""
    sspec = _parse_spec_or_usage(seq)
    try:
        prof = profile_fast(sspec.word.prefix(count), m,
                            source=sspec.canonical)
    except ValueError as e:
        raise click.UsageError(str(e)) from None
    click.echo(f"{entropy_estimate(prof, m, base):.10f}")


@main.command()
@click.option("--d", type=int, default=2)
@click.option("--e", type=int, default=3)
@click.option("--n", "bound", type=int, required=True,
              help="scan indices up to N")
@click.option("--out", type=click.File("w"), default="-")
def collisions(d, e, bound, out):
    """Indices below N with two power-sum representations, as CSV."""
    try:
        pair = DEPairSpec(d, e)
        report = collision_scan(pair, bound)
    except ValueError as err:
        raise click.UsageError(str(err)) from None
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "count", "reps"])
    for n, reps in report.entries:
        text = "|".join(f"{d}^{k}+{e}^{l}" for k, l in reps)
        writer.writerow([n, len(reps), text])


if __name__ == "__main__":
    main()
