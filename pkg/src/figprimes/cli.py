"""figprimes command-line interface.

Exit codes: 0 success, 1 a target without decomposition was found,
2 usage error, 3 I/O or cache-format error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .analytic import (
    DEFAULT_H,
    derivative_audit,
    h_sum_even,
    log_sum_odd,
    remainder_scan,
    taylor_coeffs,
)
from .census import census, census_csv, census_dict, census_sets
from .core import enumerate_figurate_primes, figurate_values, prime_sieve
from .exceptions import CacheError, FigurateRangeError
from .membership import FigurateSet, build_set, load_cache, save_cache
from .verifier import DEFAULT_CHUNK, verify_range, witness_for

log = logging.getLogger("figprimes")

CACHE_DIR_ENV = "FIGPRIMES_CACHE_DIR"

EXIT_OK = 0
EXIT_EXCEPTION = 1
EXIT_USAGE = 2
EXIT_IO = 3


class UsageError(Exception):
    pass


def parse_epsilon(text: str) -> float:
    """Accept ``0.01``, ``1e-3`` or ``2^-12``."""
    t = text.strip()
    try:
        if "^" in t:
            base, exp = t.split("^", 1)
            return float(base) ** float(exp)
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1 or v >= 1 << 64:
        raise argparse.ArgumentTypeError(f"must lie in [1, 2^64): {text}")
    return v


def _default_cache(max_n: int) -> Optional[Path]:
    d = os.environ.get(CACHE_DIR_ENV)
    return Path(d) / f"figurate-{max_n}.fgp" if d else None


def _obtain_set(max_n: int, cache: Optional[str]) -> FigurateSet:
    path = Path(cache) if cache else _default_cache(max_n)
    if path is not None and path.exists():
        fset = load_cache(path)
        if fset.max_n >= max_n:
            log.info("loaded %s (max_n=%d)", path, fset.max_n)
            return fset
        log.info("cache %s covers only %d; rebuilding", path, fset.max_n)
    t0 = time.perf_counter()
    fset = build_set(max_n)
    log.info("built membership table for %d in %.2fs", max_n, time.perf_counter() - t0)
    if path is not None:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        save_cache(fset, path)
    return fset


def _write(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands ---------------------------------------------------------------


def cmd_sieve(args) -> int:
    fset = _obtain_set(args.max, args.cache)
    if args.emit:
        res = enumerate_figurate_primes(args.max)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "p", "r", "s"])
        for v in res.values:
            wt = res.witnesses[v]
            w.writerow([v, wt.p, wt.r, wt.s])
        Path(args.emit).write_text(buf.getvalue())
    summary = {"max_n": fset.max_n, "count": len(fset)}
    if args.format == "json":
        _write(_json(summary), args.output)
    else:
        _write(f"figurate primes <= {fset.max_n}: {len(fset)}\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    lo = args.lo
    if args.max < 2 or lo < 2 or lo > args.max:
        raise UsageError(f"need 2 <= --from <= --max, got from={lo} max={args.max}")
    fset = _obtain_set(args.max, args.cache)
    report = verify_range(
        fset, lo, args.max, jobs=args.jobs, chunk_size=args.chunk_size,
        keep_witnesses=bool(args.witnesses),
    )
    text = report.to_json(timing=args.timing)
    if args.report:
        Path(args.report).write_text(text)
    if args.witnesses:
        Path(args.witnesses).write_text(report.witness_csv())
    if args.format == "json":
        sys.stdout.write(text)
    else:
        sys.stdout.write(
            f"checked {report.checked} targets in [{report.lo}, {report.hi}]: "
            f"{len(report.exceptions)} exceptions\n"
        )
    log.info("verification took %.2fs", report.seconds)
    for n in report.exceptions:
        print(f"no decomposition for {n}; scan trace (a, n-a, figurate):", file=sys.stderr)
        for a, b, ok in report.traces[n]:
            print(f"  {a} {b} {int(ok)}", file=sys.stderr)
    return EXIT_EXCEPTION if report.exceptions else EXIT_OK


def _needed(n: int, parity: str) -> int:
    # covers the target itself so a witness can be looked up
    return 2 * n + 1 if parity == "odd" else 2 * n


def cmd_census(args) -> int:
    fset = build_set(max(_needed(args.n, args.parity), 1))
    c = census(fset, args.n, args.parity)
    if args.format == "json":
        out = census_dict(c)
        if args.sets:
            out["sets"] = census_sets(fset, args.n, args.parity)
        _write(_json(out), args.output)
    elif args.format == "csv":
        _write(census_csv([c]), args.output)
    else:
        names = ("l", "l1", "l2") if args.parity == "even" else ("m", "m1", "m2")
        vals = c.as_row()[2:]
        lines = [f"target {c.target} ({args.parity})"]
        lines += [f"{k} = {v}" for k, v in zip(names, vals)]
        if args.sets:
            for k, v in census_sets(fset, args.n, args.parity).items():
                lines.append(f"{k}: {v}")
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_formula(args) -> int:
    fset = build_set(_needed(args.n, args.parity))
    c = census(fset, args.n, args.parity)
    if args.parity == "even":
        value = h_sum_even(fset, args.n)
        expected = c.l2 * float(DEFAULT_H.h(np.float64(1.0)))
        label = "sum h(delta(i)) delta(2n-i), h = x e^x"
    else:
        value = log_sum_odd(fset, args.n)
        expected = c.m2 * float(np.log(2.0))
        label = "sum log(1 + delta(i) delta(2n+1-i))"
    rec = witness_for(fset, c.target)
    out = {
        "target": c.target,
        "parity": args.parity,
        "formula": label,
        "value": value,
        "count_times_weight": expected,
        "positive": value > 0,
        "witness": None if rec is None else [rec.a, rec.b],
    }
    if args.format == "json":
        _write(_json(out), args.output)
    else:
        _write("".join(f"{k}: {v}\n" for k, v in out.items()), args.output)
    return EXIT_OK


def _eps_grid(eps_max: float, eps_min: float) -> List[float]:
    if not 0 < eps_min <= eps_max < 1:
        raise UsageError("need 0 < --eps-min <= --eps-max < 1")
    grid = []
    e = eps_max
    while e >= eps_min * (1 - 1e-12):
        grid.append(e)
        e /= 2.0
    if len(grid) < 3:
        raise UsageError("epsilon range yields fewer than 3 grid points")
    return grid


def cmd_taylor(args) -> int:
    grid = _eps_grid(args.eps_max, args.eps_min)
    fset = build_set(_needed(args.n, args.parity))
    report = remainder_scan(fset, args.n, args.parity, DEFAULT_H, grid)
    if args.format == "json":
        _write(report.to_json(), args.output)
    elif args.format == "csv":
        _write(report.to_csv(), args.output)
    else:
        lines = [
            f"target {report.census['target']} ({args.parity}), coefficients {report.coefficients}",
            f"fitted remainder slope: {report.slope} ({report.points_used} points)",
            "epsilon, remainder, remainder/eps^(deg+1), residual",
        ]
        for e, r, q, p in zip(report.epsilon, report.remainder, report.ratio, report.paper_residual):
            lines.append(f"{e:.6g} {r:.6e} {q:.6g} {p:.6e}")
        lines += report.notes
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_audit(args) -> int:
    fset = build_set(_needed(args.n, args.parity))
    checks = derivative_audit(fset, args.n, args.parity)
    rows = [
        {
            "formula": c.name,
            "order": c.order,
            "max_error": c.max_error,
            "tolerance": c.tolerance,
            "passed": c.passed,
            "worst_index": c.worst_index,
            "closed_form": c.closed_form,
            "finite_difference": c.finite_difference,
            "median_ratio": c.ratio,
        }
        for c in checks.values()
    ]
    if args.format == "json":
        _write(_json(rows), args.output)
    else:
        lines = [
            f"{r['formula']:<16} order {r['order']} error {r['max_error']:.3e} "
            f"{'ok' if r['passed'] else 'FAIL'} (fd/closed ~ {r['median_ratio']:.4g})"
            for r in rows
        ]
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_stats(args) -> int:
    figurate = int(figurate_values(args.max).size)
    primes = int(np.count_nonzero(prime_sieve(args.max)))
    out = {"max_n": args.max, "figurate_primes": figurate, "primes": primes}
    if args.format == "json":
        _write(_json(out), args.output)
    elif args.format == "csv":
        _write(f"max_n,figurate_primes,primes\n{args.max},{figurate},{primes}\n", args.output)
    else:
        _write(f"<= {args.max}: {figurate} figurate primes, {primes} primes\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="figprimes", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "json", "csv")):
        sp.add_argument("--format", choices=formats, default="text")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    s = sub.add_parser("sieve", help="build the membership table")
    s.add_argument("--max", type=positive_int, required=True)
    s.add_argument("--cache")
    s.add_argument("--emit", help="CSV of value,p,r,s witnesses")
    common(s, ("text", "json"))
    s.set_defaults(func=cmd_sieve)

    s = sub.add_parser("verify", help="check every target in a range")
    s.add_argument("--max", type=int, required=True)
    s.add_argument("--from", dest="lo", type=int, default=2)
    s.add_argument("--jobs", type=positive_int, default=1)
    s.add_argument("--chunk-size", type=positive_int, default=DEFAULT_CHUNK)
    s.add_argument("--cache")
    s.add_argument("--report", help="JSON report path")
    s.add_argument("--witnesses", help="CSV dump of n,a,b")
    s.add_argument("--timing", action="store_true", help="include seconds in the JSON report")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("census", cmd_census, "partition counts for one target"),
        ("formula", cmd_formula, "evaluate the sum formulation"),
        ("taylor", cmd_taylor, "remainder scan of the epsilon expansion"),
        ("audit", cmd_audit, "finite-difference check of derivative formulas"),
    ):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--n", type=positive_int, required=True)
        s.add_argument("--parity", choices=("even", "odd"), required=True)
        if name == "census":
            s.add_argument("--sets", action="store_true", help="list the six index sets")
        if name == "taylor":
            s.add_argument("--eps-min", type=parse_epsilon, default=2.0**-12)
            s.add_argument("--eps-max", type=parse_epsilon, default=2.0**-4)
        common(s, ("text", "json", "csv") if name in ("census", "taylor") else ("text", "json"))
        s.set_defaults(func=func)

    s = sub.add_parser("stats", help="raw counts of figurate primes and primes")
    s.add_argument("--max", type=positive_int, required=True)
    common(s)
    s.set_defaults(func=cmd_stats)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (UsageError, FigurateRangeError) as e:
        print(f"figprimes: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CacheError, OSError) as e:
        print(f"figprimes: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())
