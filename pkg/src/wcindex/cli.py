"""``wcindex`` command-line tool.

Exit codes: 0 ok, 1 usage/parse (or a failed verification), 2 budget,
3 resource/refusal, 4 I/O.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from . import bench
from .errors import BudgetError, IndexFormatError, PatternError, ResourceError
from .indexes import Index, IndexVariant, Variant, build_index
from .oracle import DEFAULT_CAP, oracle_match
from .persist import load_index, save_index
from .text import IndexedText, parse_pattern

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3, 4

VARIANTS = {"simple": Variant.SIMPLE, "art": Variant.ART_LINEAR, "tradeoff": Variant.TRADEOFF,
            "linear": Variant.LINEAR_TIME}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def read_text(path: str) -> str:
    """File contents verbatim; undecodable bytes survive via surrogate escapes."""
    return Path(path).read_bytes().decode("utf-8", "surrogateescape")


def _variant(args) -> IndexVariant:
    kind = VARIANTS[args.variant]
    if kind == Variant.TRADEOFF:
        return IndexVariant.tradeoff(args.beta, args.k, args.opt or 0, args.guard)
    if kind == Variant.LINEAR_TIME:
        return IndexVariant.linear_time(args.k, args.opt, args.g, args.chi, args.guard)
    if kind == Variant.ART_LINEAR:
        return IndexVariant.art(args.k, args.opt or 0, args.chi)
    return IndexVariant.simple(args.k, args.opt or 0)


def _print_pairs(pairs, stream) -> None:
    for key, value in pairs:
        print(f"{key}={value}", file=stream)


def cmd_build(args) -> int:
    text = IndexedText(read_text(args.text))
    index = build_index(text, _variant(args))
    save_index(index, args.index)
    _print_pairs(index.summary().items(), sys.stdout)
    return EXIT_OK


def _render(result, fmt: str) -> list[str]:
    lines = result.lines()
    if fmt == "tabular":
        head = "start" if result.mode == "starts" else "start\tend"
        return [head, *(line.replace(" ", "\t") for line in lines)]
    return lines


def cmd_query(args) -> int:
    index = load_index(args.index)
    pattern = parse_pattern(args.pattern)
    route = None if args.route == "auto" else args.route
    if route and index.kind != Variant.LINEAR_TIME:
        raise ValueError("--route only applies to LINEAR_TIME indexes")
    result, stats = index.query(pattern, route=route)
    out = "\n".join(_render(result, args.format))
    if out:
        sys.stdout.write(out + "\n")
    if args.stats:
        _print_pairs(stats.as_pairs(), sys.stderr)
    return EXIT_OK


def _verify_one(index: Index, text: IndexedText, pattern, cap: int) -> str | None:
    """None when index and oracle agree, else a description of the first divergence."""
    expected = oracle_match(text, pattern, cap).occurrences(pattern)
    got, _ = index.query(pattern)
    got = list(got)
    if got == expected:
        return None
    missing = sorted(set(expected) - set(got))
    extra = sorted(set(got) - set(expected))
    first = min(missing[:1] + extra[:1])
    side = "missing from index" if first in missing else "not in oracle"
    return f"pattern {pattern}: first divergence {first} ({side}); index={len(got)} oracle={len(expected)}"


def cmd_verify(args) -> int:
    index = load_index(args.index)
    text = IndexedText(read_text(args.text))
    if text != index.text:
        raise IndexFormatError("index was built over a different text")
    if args.pattern is None and not args.random:
        raise ValueError("give a pattern or --random N")
    patterns = [parse_pattern(args.pattern)] if args.pattern is not None else []
    if args.random:
        rng = random.Random(args.seed)
        bounded = index.kind in (Variant.TRADEOFF, Variant.LINEAR_TIME)
        k = index.k if bounded else args.k
        o = index.o if bounded else (args.opt if args.opt is not None else 2)
        symbols = "".join(sorted(text.alphabet))
        patterns += [bench.random_gap_pattern(rng, symbols, k, o) for _ in range(args.random)]
    for pattern in patterns:
        problem = _verify_one(index, text, pattern, args.cap)
        if problem:
            print(problem)
            return EXIT_USAGE
    print(f"ok: {len(patterns)} pattern(s) agree with the oracle")
    return EXIT_OK


def cmd_stats(args) -> int:
    index = load_index(args.index)
    _print_pairs(index.summary().items(), sys.stdout)
    return EXIT_OK


def cmd_sweep(args) -> int:
    corpora = [bench.CorpusSpec.parse(c, args.seed) for c in args.corpus]
    rows = bench.run_sweep(corpora, args.beta, args.k, args.queries, args.seed, args.guard)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            bench.write_csv(rows, fh, args.seed)
    else:
        bench.write_csv(rows, sys.stdout, args.seed)
    return EXIT_OK


def _variant_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=sorted(VARIANTS), default="simple")
    p.add_argument("--beta", type=int, default=2, help="branching bound for tradeoff")
    p.add_argument("--k", type=int, default=0, help="wildcard budget")
    p.add_argument("--opt", type=int, default=None, help="optional-wildcard budget")
    p.add_argument("--chi", type=int, default=None, help="override the ART leaf threshold")
    p.add_argument("--g", type=int, default=None, help="override the linear-time threshold G")
    p.add_argument("--guard", type=int, default=None, help="cap on stored strings")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wcindex", description="Wildcard and gapped-pattern text indexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build", help="build an index file from a text file")
    p.add_argument("text")
    p.add_argument("index")
    _variant_flags(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="report occurrences of a pattern")
    p.add_argument("index")
    p.add_argument("pattern")
    p.add_argument("--stats", action="store_true", help="print counters to stderr")
    p.add_argument("--format", choices=("lines", "tabular"), default="lines")
    p.add_argument("--route", choices=("auto", "special", "fallback"), default="auto")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare index answers with the brute-force oracle")
    p.add_argument("index")
    p.add_argument("text")
    p.add_argument("pattern", nargs="?")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="also check N random in-budget patterns")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=2, help="gaps for random patterns on unbounded variants")
    p.add_argument("--opt", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle gap-product cap")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="print index parameters and sizes")
    p.add_argument("index")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="bound-checking space/counter sweep as CSV")
    p.add_argument("--corpus", action="append", default=None,
                   help="uniform:N:SIGMA, zipf:N:SIGMA or periodic:UNIT:N (repeatable)")
    p.add_argument("--beta", type=int, nargs="+", default=[2, 3])
    p.add_argument("--k", type=int, nargs="+", default=[1, 2])
    p.add_argument("--queries", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep" and not args.corpus:
        args.corpus = ["uniform:64:2", "uniform:256:4"]
    try:
        return args.func(args)
    except PatternError as exc:
        print(f"wcindex: pattern error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"wcindex: budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ResourceError as exc:
        print(f"wcindex: refused: {exc} (count={exc.count})", file=sys.stderr)
        return EXIT_RESOURCE
    except IndexFormatError as exc:
        print(f"wcindex: refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"wcindex: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"wcindex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
