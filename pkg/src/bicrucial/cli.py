"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 no bicrucial permutation of that
length exists, 3 the bounded search gave up, 4 negative check result (or a
count table row that disagrees with the stored value).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .construct import construct_bicrucial
from .counting import TABLE1, Kind, count, count_brute
from .crucial import analyze
from .errors import CapExceeded, Infeasible, InvalidInput, Unsupported
from .perm import Permutation, format_permutation, parse_permutation
from .search import (
    THREADS_ENV,
    Phase,
    SearchStats,
    default_threads,
    enumerate_left_crucial,
    pipeline_parameters,
    search_bicrucial_nonexistence,
    suffix_dedupe_extend,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_UNSUPPORTED = 3
EXIT_NEGATIVE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def emit_coordinates(perm: Sequence[int]) -> str:
    """One ``"index value"`` line per entry."""
    return "\n".join(f"{i} {v}" for i, v in enumerate(perm))


def _permutation_arg(text: str) -> Permutation:
    try:
        return parse_permutation(text)
    except InvalidInput as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _length_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("length must be at least 1")
    return n


def _emit(obj: dict) -> None:
    print(json.dumps(obj), flush=True)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bicrucial", description="Squares, crucial and bicrucial permutations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="print a bicrucial permutation of a given length")
    c.add_argument("--length", type=_length_arg, required=True)
    c.add_argument("--verify", action="store_true", help="re-check the result before printing")
    c.add_argument("--json", action="store_true")
    c.add_argument("--budget", type=int, default=2_000_000,
                   help="node budget for lengths handled by search")
    c.add_argument("--coords", action="store_true", help="print index/value lines instead")
    c.add_argument("--figure", metavar="PATH", help="also write a plot of the permutation")

    k = sub.add_parser("check", help="classify a permutation")
    k.add_argument("perm", type=_permutation_arg, help='comma-separated, e.g. "0,2,1"')
    mode = k.add_mutually_exclusive_group()
    mode.add_argument("--bi", dest="mode", action="store_const", const="bi")
    mode.add_argument("--left", dest="mode", action="store_const", const="left")
    mode.add_argument("--right", dest="mode", action="store_const", const="right")
    mode.add_argument("--square-free", dest="mode", action="store_const", const="square-free")
    k.add_argument("--json", action="store_true")

    n = sub.add_parser("count", help="count permutations of one kind and length")
    n.add_argument("--kind", choices=[kd.value for kd in Kind], required=True)
    n.add_argument("--length", type=_length_arg, required=True)
    n.add_argument("--brute-force", action="store_true")
    n.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default: ${THREADS_ENV} or all cores)")
    n.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="exhaustive searches")
    what = s.add_mutually_exclusive_group(required=True)
    what.add_argument("--nonexistence", action="store_true")
    what.add_argument("--left-crucial", action="store_true")
    what.add_argument("--suffix", action="store_true", help="suffix deduplication pipeline only")
    s.add_argument("--length", type=_length_arg, required=True)
    s.add_argument("--phase", choices=[ph.value for ph in Phase], default=None)
    s.add_argument("--emit", action="store_true", help="stream permutations, one per line")
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--source", type=int, default=None, help="suffix mode: source length")
    s.add_argument("--drop", type=int, default=None, help="suffix mode: entries dropped")

    t = sub.add_parser("table1", help="recompute the count table and compare with stored values")
    t.add_argument("--max", type=_length_arg, default=12)
    t.add_argument("--threads", type=int, default=None)
    t.add_argument("--json", action="store_true")
    t.add_argument("--figure", metavar="PATH", help="also write a chart of the counts")

    o = sub.add_parser("coords", help="print index/value lines of a permutation")
    o.add_argument("perm", type=_permutation_arg)

    g = sub.add_parser("plot", help="write a plot of a permutation")
    g.add_argument("perm", type=_permutation_arg)
    g.add_argument("--output", required=True, metavar="PATH")
    g.add_argument("--title", default=None)
    return p


def _threads(value: Optional[int]) -> int:
    if value is None:
        return default_threads()
    if value < 1:
        raise UsageError("--threads must be at least 1")
    return value


def _cmd_construct(args) -> int:
    sigma = construct_bicrucial(args.length, budget=args.budget)
    verified = None
    if args.verify:
        verified = analyze(sigma).bicrucial
        if not verified:
            print(f"verification failed: {format_permutation(sigma)}", file=sys.stderr)
            return EXIT_NEGATIVE
    if args.figure:
        from .plotting import plot_permutation
        plot_permutation(sigma, args.figure, title=f"bicrucial, n = {len(sigma)}")
    if args.json:
        _emit({"length": len(sigma), "permutation": format_permutation(sigma),
               "verified": verified})
    elif args.coords:
        print(emit_coordinates(sigma))
    else:
        print(format_permutation(sigma))
    return EXIT_OK


def _cmd_check(args) -> int:
    report = analyze(args.perm)
    mode = args.mode or "bi"
    ok = {
        "bi": report.bicrucial,
        "left": report.left_crucial,
        "right": report.right_crucial,
        "square-free": report.square_free,
    }[mode]
    if args.json:
        d = report.to_dict()
        d["mode"] = mode
        d["result"] = ok
        _emit(d)
    else:
        print(f"{mode}: {'yes' if ok else 'no'}")
        if report.failing_extension is not None and mode != "square-free":
            side, value, ext = report.failing_extension
            print(f"square-free {side} extension by {value}: {format_permutation(ext)}")
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_count(args) -> int:
    kind = Kind(args.kind)
    if args.brute_force:
        report = count_brute(kind, args.length)
    else:
        report = count(kind, args.length, threads=_threads(args.threads))
    if args.json:
        _emit(report.to_dict())
    else:
        print(report.count)
    return EXIT_OK


def _cmd_search(args) -> int:
    n = args.length
    if args.nonexistence:
        res = search_bicrucial_nonexistence(n, budget=args.budget)
        if args.emit and res.witness is not None:
            print(format_permutation(res.witness))
        _emit(res.to_dict())
        return EXIT_UNSUPPORTED if res.verdict.value == "exhausted" else EXIT_OK
    phase = Phase(args.phase) if args.phase else Phase.ANY
    if args.left_crucial:
        stats = SearchStats()
        found = 0
        for perm in enumerate_left_crucial(n, phase, stats=stats):
            found += 1
            if args.emit:
                print(format_permutation(perm))
        d = {"length": n, "phase": phase.value, "count": found}
        d.update(stats.to_dict())
        _emit(d)
        return EXIT_OK
    source, drop = pipeline_parameters(n)
    source = args.source if args.source is not None else source
    drop = args.drop if args.drop is not None else drop
    res = suffix_dedupe_extend(source, drop, n, phase, keep=100 if args.emit else 0,
                               budget=args.budget)
    for ext in res.extensions:
        print(format_permutation(ext))
    d = {"length": n, "phase": phase.value, "source_len": source, "drop": drop,
         "unique_suffixes": res.unique_suffix_count,
         "right_crucial_extensions": res.right_crucial_extension_count}
    d.update(res.stats.to_dict())
    _emit(d)
    return EXIT_OK


def _cmd_table1(args) -> int:
    threads = _threads(args.threads)
    rows = {}
    mismatches = 0
    if not args.json:
        print("n\tsquare_free\tleft_crucial\tbicrucial\tmatch")
    for n in range(1, args.max + 1):
        got = tuple(count(kind, n, threads=threads).count for kind in Kind)
        rows[n] = got
        expected = TABLE1.get(n)
        match = None if expected is None else got == expected
        mismatches += match is False
        if args.json:
            _emit({"n": n, "square_free": got[0], "left_crucial": got[1], "bicrucial": got[2],
                   "expected": None if expected is None else list(expected), "match": match})
        else:
            print("\t".join(map(str, (n, *got, "-" if match is None else match))), flush=True)
    if args.figure:
        from .plotting import plot_counts
        plot_counts(rows, args.figure)
    return EXIT_NEGATIVE if mismatches else EXIT_OK


def _cmd_plot(args) -> int:
    from .plotting import plot_permutation
    plot_permutation(args.perm, args.output, title=args.title)
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handlers = {
        "construct": _cmd_construct,
        "check": _cmd_check,
        "count": _cmd_count,
        "search": _cmd_search,
        "table1": _cmd_table1,
        "coords": lambda a: print(emit_coordinates(a.perm)) or EXIT_OK,
        "plot": _cmd_plot,
    }
    try:
        return handlers[args.command](args)
    except (UsageError, InvalidInput, CapExceeded) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INFEASIBLE
    except Unsupported as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_UNSUPPORTED


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "emit_coordinates", "build_parser"]
