"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 input/output or format problem, 3 value
overflow, 4 selftest mismatch.
"""
from __future__ import annotations

import argparse
import sys
import time
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from .errors import FormatError, LimitError, RangeError, ValueOverflowError

EXIT_USAGE, EXIT_IO, EXIT_OVERFLOW, EXIT_SELFTEST = 1, 2, 3, 4
INT64_MIN, INT64_MAX = -(1 << 63), (1 << 63) - 1


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input ------------------------------------------------------------------


def parse_scale(text) -> int:
    """Accept ``1000``, ``10^3`` or ``1e3``; the result must be a power of ten."""
    t = str(text).strip().lower()
    try:
        if t.startswith("10^"):
            value = 10 ** int(t[3:])
        else:
            d = Decimal(t)
            if d != d.to_integral_value():
                raise ValueError
            value = int(d)
    except (ValueError, InvalidOperation):
        raise UsageError(f"bad scale {text!r}") from None
    if value < 1 or str(value).rstrip("0") != "1":
        raise UsageError(f"scale {text!r} is not a power of ten")
    return value


def read_values(path, fmt="text", scale=1):
    """Integers from a text file (one number per line) or raw little-endian int64."""
    p = Path(path)
    try:
        if fmt == "bin":
            raw = p.read_bytes()
            if len(raw) % 8:
                raise InputError(f"{path}: size {len(raw)} is not a multiple of 8 bytes")
            return np.frombuffer(raw, "<i8").astype(np.int64)
        lines = p.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    out = []
    for ln, line in enumerate(lines, 1):
        s = line.strip()
        if not s:
            continue
        try:
            d = Decimal(s) * scale
        except InvalidOperation:
            raise InputError(f"{path}:{ln}: not a number: {s!r}") from None
        if not d.is_finite() or d != d.to_integral_value():
            raise InputError(f"{path}:{ln}: {s} is not an integer at scale {scale}")
        v = int(d)
        if not INT64_MIN <= v <= INT64_MAX:
            raise ValueOverflowError(f"{path}:{ln}: {s} does not fit 64 bits")
        out.append(v)
    return np.array(out, dtype=np.int64)


def parse_range(text):
    for sep in (":", " ", ","):
        if sep in text.strip():
            a, b = text.strip().split(sep, 1)
            try:
                return int(a), int(b)
            except ValueError:
                break
    raise UsageError(f"bad range {text!r}; expected i:j")


# -- subcommands ----------------------------------------------------------


def cmd_build(args, out):
    from .index import build_index

    vals = read_values(args.input, args.format, parse_scale(args.scale))
    idx = build_index(vals, with_nonempty=args.with_nonempty)
    try:
        Path(args.out).write_bytes(idx.serialize())
    except OSError as exc:
        raise InputError(f"{args.out}: {exc.strerror or exc}") from exc
    print(f"n={idx.n} bits={idx.size_in_bits()}", file=out)
    return 0


def _load_index(path):
    from .index import RMaxSSQIndex

    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    return RMaxSSQIndex.deserialize(data)


def cmd_query(args, out):
    idx = _load_index(args.index)
    ranges = [parse_range(r) for r in args.range or []]
    if args.ranges_file:
        try:
            text = Path(args.ranges_file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"{args.ranges_file}: {exc.strerror or exc}") from exc
        ranges += [parse_range(s) for s in text.splitlines() if s.strip()]
    if not ranges:
        raise UsageError("no ranges given; use --range or --ranges-file")
    ask = idx.query_nonempty if args.nonempty else idx.query
    for i, j in ranges:
        print(ask(i, j), file=out)
    return 0


def cmd_kcover(args, out):
    from .kcover import all_k, build_tree, max_kcover

    vals = read_values(args.input, args.format, parse_scale(args.scale))
    tree = build_tree(vals)
    if args.all_k:
        kmax = args.k if args.k is not None else max(len(tree), 1)
        if kmax < 1:
            raise UsageError("--k must be at least 1")
        for k, ans in enumerate(all_k(tree, kmax=kmax), 1):
            spans = " ".join(f"{a}:{b}" for a, b in ans.intervals)
            print(f"k={k} score={ans.score} {spans}".rstrip(), file=out)
        return 0
    if args.k is None:
        raise UsageError("--k is required unless --all-k is given")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    print(max_kcover(tree, args.k), file=out)
    return 0


def cmd_count_trees(args, out):
    from .mss import count_tables, growth_estimate

    if args.n < 0:
        raise UsageError("--n must be non-negative")
    tab = count_tables(args.n)
    print(f"T({args.n})={tab.t[args.n]} M({args.n})={tab.m[args.n]}", file=out)
    if args.growth:
        if args.n < 2:
            raise UsageError("--growth needs --n of at least 2")
        print(f"growth={growth_estimate(args.n, tab):.7f}", file=out)
    return 0


def bench(n, seed, queries=100_000, repeats=3):
    """Dictionary of bits per element, build ns per element and query ns."""
    from .index import build_index

    rng = np.random.default_rng(seed)
    vals = rng.integers(-(1 << 20), 1 << 20, n)
    build_index(vals[: min(n, 64)])  # compile outside the timing
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        idx = build_index(vals)
        times.append(time.perf_counter() - t0)
    lo = rng.integers(1, n + 1, queries)
    hi = rng.integers(1, n + 1, queries)
    lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
    idx.query_many(lo[:16], hi[:16])
    t0 = time.perf_counter()
    idx.query_many(lo, hi)
    q = time.perf_counter() - t0
    return {
        "n": n,
        "bits_per_element": idx.size_in_bits() / n,
        "build_ns_per_element": float(np.median(times)) / n * 1e9,
        "query_ns": q / queries * 1e9,
    }


def cmd_bench(args, out):
    if args.n < 1 or args.queries < 1:
        raise UsageError("--n and --queries must be positive")
    r = bench(args.n, args.seed, args.queries)
    print(f"n={r['n']} bits_per_element={r['bits_per_element']:.3f} "
          f"build_ns_per_element={r['build_ns_per_element']:.1f} "
          f"query_ns={r['query_ns']:.1f}", file=out)
    return 0


def selftest(cases, seed=0, max_n=40):
    """Compare the index and k-cover against brute force; returns mismatch messages."""
    from .index import build_index
    from .kcover import all_k, build_tree
    from .oracle import naive_all_windows, naive_kcover_all

    rng = np.random.default_rng(seed)
    bad = []
    for case in range(cases):
        n = int(rng.integers(1, max_n + 1))
        a = rng.integers(-20, 21, n)
        idx = build_index(a)
        ii, jj = np.triu_indices(n)
        lo, hi = idx.query_many(ii + 1, jj + 1)
        want_lo, want_hi = naive_all_windows(a)
        if not (np.array_equal(lo, want_lo[ii + 1, jj + 1]) and np.array_equal(hi, want_hi[ii + 1, jj + 1])):
            bad.append(f"case {case}: segment answers differ for {a.tolist()}")
        dp = naive_kcover_all(a, n)
        got = [ans.score for ans in all_k(build_tree(a), kmax=n)]
        if got != dp[1:].tolist():
            bad.append(f"case {case}: k-cover scores differ for {a.tolist()}")
    return bad


def cmd_selftest(args, out):
    if args.cases < 0:
        raise UsageError("--cases must be non-negative")
    bad = selftest(args.cases, args.seed)
    for msg in bad:
        print(msg, file=out)
    if bad:
        print(f"selftest: {len(bad)} mismatches", file=out)
        return EXIT_SELFTEST
    print(f"selftest: {args.cases} cases ok", file=out)
    return 0


# -- wiring ---------------------------------------------------------------


def _input_args(p):
    p.add_argument("--input", required=True, help="values file")
    p.add_argument("--format", choices=("text", "bin"), default="text")
    p.add_argument("--scale", default="1", help="power-of-ten multiplier for decimal text, e.g. 10^2")


def make_parser():
    ap = _Parser(prog="segsum", description="Range maximum-sum segment index tools.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build and save an index")
    _input_args(p)
    p.add_argument("--with-nonempty", action="store_true",
                   help="also store the range-max needed by --nonempty queries")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer range queries from a saved index")
    p.add_argument("--index", required=True)
    p.add_argument("--range", action="append", help="i:j, 1-based inclusive; repeatable")
    p.add_argument("--ranges-file", help="one range per line")
    p.add_argument("--nonempty", action="store_true",
                   help="answer the largest value instead of empty")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("kcover", help="maximum-score k disjoint segments")
    _input_args(p)
    p.add_argument("--k", type=int)
    p.add_argument("--all-k", action="store_true", help="one line for every k up to --k")
    p.set_defaults(func=cmd_kcover)

    p = sub.add_parser("count-trees", help="MSS-tree counts T(n), M(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--growth", action="store_true", help="also print log2(T(n)/T(n-1))")
    p.set_defaults(func=cmd_count_trees)

    p = sub.add_parser("bench", help="size, build and query timings on random data")
    p.add_argument("--n", type=int, default=1 << 20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--queries", type=int, default=100_000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("selftest", help="check against brute force on random arrays")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, RangeError, LimitError) as exc:
        print(f"segsum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueOverflowError as exc:
        print(f"segsum: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (InputError, FormatError) as exc:
        print(f"segsum: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:  # e.g. empty input
        print(f"segsum: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
