"""Command-line interface.

Subcommands
-----------
partition   print the first cells of a partition, with representatives and margins
fold        coarsely fold numbers read from a file or stdin (one per line)
inert       judge a generated stream for inertness
stpete      value the doubling gamble's expected-increment stream

Exit codes: 0 success (including "inert" verdicts), 1 error, 2 usage,
3 no-verdict.  Output is deterministic: identical flags, input, and seed
produce byte-identical output.  Numbers parse as integers, ``p/q``, or exact
decimals; JSON output renders rationals as ``p/q`` strings, tables render
them as decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import CoarseError
from .inertness import constant, detect_inert_stream, geometric, harmonic
from .ops import CoarseContext
from .partitions import (Domain, EpsilonGrowth, ExplicitBounds, Fibonacci, FixedWidth,
                         SingletonGrid, build_partition)
from .rationals import format_decimal, format_rational, parse_rational
from .representatives import Policy, margin_neg, margin_pos, rep_of_cell
from .stpetersburg import Gamble, coarse_value, compare_valuations


# --------------------------------------------------------------- shared flags

def _add_partition_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fibonacci", action="store_true",
                   help="integer cells sized 1, 1, 2, 3, 5, 8, ...")
    g.add_argument("--width", type=int, metavar="W",
                   help="integer cells of fixed width W")
    g.add_argument("--eps", metavar="P/Q",
                   help="real growth cells [0,1/2], then widths 2/eps, 3/eps, ...")
    g.add_argument("--bounds", metavar="B0,B1,...",
                   help="explicit cells cut at ascending boundaries")
    g.add_argument("--grid", metavar="STEP",
                   help="one-point cells at the nonnegative multiples of STEP")
    p.add_argument("--domain", choices=["int", "real"], default="int",
                   help="domain for --bounds (default: int)")
    p.add_argument("--rep", choices=["median", "min", "max"], default="median",
                   help="representative policy (default: median)")


def _spec_from_args(args):
    if args.fibonacci:
        return Fibonacci()
    if args.width is not None:
        return FixedWidth(args.width)
    if args.eps is not None:
        return EpsilonGrowth(parse_rational(args.eps))
    if args.grid is not None:
        return SingletonGrid(parse_rational(args.grid))
    bounds = tuple(parse_rational(b) for b in args.bounds.split(","))
    return ExplicitBounds(bounds, Domain(args.domain))


def _context_from_args(args) -> CoarseContext:
    return CoarseContext(build_partition(_spec_from_args(args)), Policy(args.rep))


# ------------------------------------------------------------------ rendering

def _render_table(headers, rows) -> str:
    cols = range(len(headers))
    widths = [max([len(headers[i])] + [len(r[i]) for r in rows]) for i in cols]
    out = ["  ".join(headers[i].ljust(widths[i]) for i in cols).rstrip()]
    for r in rows:
        out.append("  ".join(r[i].ljust(widths[i]) for i in cols).rstrip())
    return "\n".join(out)


def _verdict_text(v) -> str:
    if v.inert:
        kind = "certified" if v.certified else "observed"
        return (f"inert at cell {v.cell_index} from step {v.n_stable}, "
                f"value {format_decimal(v.fixed_value)} ({kind})")
    return f"no verdict after {v.horizon} steps"


# ---------------------------------------------------------------- subcommands

def cmd_partition(args) -> int:
    ctx = _context_from_args(args)
    cells = [ctx.partition.cell_at(i) for i in range(1, args.cells + 1)]
    triples = [(c, rep_of_cell(c, ctx.policy), margin_pos(c, ctx.policy),
                margin_neg(c, ctx.policy)) for c in cells]
    if args.format == "json":
        for c, rep, mp, mn in triples:
            print(json.dumps({
                "index": c.index,
                "lower": format_rational(c.lower),
                "upper": format_rational(c.upper),
                "lower_closed": c.lower_closed,
                "upper_closed": c.upper_closed,
                "rep": format_rational(rep),
                "margin_pos": format_rational(mp),
                "margin_neg": format_rational(mn),
            }))
    elif args.format == "csv":
        print("index,lower,upper,lower_closed,upper_closed,rep,margin_pos,margin_neg")
        for c, rep, mp, mn in triples:
            print(f"{c.index},{format_rational(c.lower)},{format_rational(c.upper)},"
                  f"{str(c.lower_closed).lower()},{str(c.upper_closed).lower()},"
                  f"{format_rational(rep)},{format_rational(mp)},{format_rational(mn)}")
    else:
        rows = [[str(c.index), str(c), format_decimal(rep), format_decimal(mp),
                 format_decimal(mn)] for c, rep, mp, mn in triples]
        print(_render_table(["cell", "interval", "rep", "margin+", "margin-"], rows))
    return 0


def _read_values(path: str | None):
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            values.append(parse_rational(stripped))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if not values:
        raise ValueError("no numbers in input")
    return values


def cmd_fold(args) -> int:
    ctx = _context_from_args(args)
    trace = ctx.fold(_read_values(args.input))
    if args.format == "json":
        print(trace.to_json_lines())
    elif args.format == "csv":
        print(trace.to_csv())
    else:
        rows = [[str(s.n), format_decimal(s.x), str(s.x_cell), format_decimal(s.s),
                 str(s.s_cell), "yes" if s.absorbed else "no"] for s in trace]
        print(_render_table(["n", "x", "x_cell", "s", "s_cell", "absorbed"], rows))
    return 0


def cmd_inert(args) -> int:
    ctx = _context_from_args(args)
    horizon = args.horizon
    if args.const is not None:
        gen = constant(parse_rational(args.const))
    elif args.harmonic:
        gen = harmonic()
    elif args.geometric is not None:
        gen = geometric(parse_rational(args.geometric[0]), parse_rational(args.geometric[1]))
    else:
        values = _read_values(args.from_file)
        horizon = min(horizon, len(values))
        gen = lambda t: values[t - 1]
    bound = None if args.bound is None else parse_rational(args.bound)
    verdict = detect_inert_stream(ctx, gen, horizon, increment_bound=bound)
    if args.format == "table":
        print(_verdict_text(verdict))
    else:
        print(json.dumps(verdict.to_json_dict()))
    return 0 if verdict.inert else 3


def _print_valuation_text(rep) -> None:
    print(f"doubling-gamble valuation  (eps = {format_decimal(rep.epsilon)}, "
          f"depth = {rep.depth})")
    print(f"  classical sum of expected increments : {format_decimal(rep.classical_sum)}")
    print(f"  absorbing cell (closed form)         : {rep.cell_from_formula}")
    print(f"  absorbing cell (margin scan)         : {rep.cell_from_scan}")
    print(f"  agreement                            : {'yes' if rep.agreement else 'no'}")
    print(f"  verdict                              : {_verdict_text(rep.verdict)}")


def cmd_stpete(args) -> int:
    eps = parse_rational(args.eps)
    if eps < 2 and not args.allow_small_eps:
        raise ValueError(
            f"eps = {eps} is below 2, where the closed form and the margin scan "
            "disagree; pass --allow-small-eps to proceed")
    if args.trials > 0:
        report = compare_valuations(eps, Gamble(args.truncation), args.trials,
                                    args.seed, depth=args.depth)
        if args.format == "json":
            print(json.dumps(report.to_json_dict(), indent=2))
            return 0
        _print_valuation_text(report.valuation)
        print(f"  sampled payoffs: trials = {report.trials}, seed = {report.seed}, "
              f"rng = {report.rng_algorithm}, truncation depth = {report.truncation_depth}")
        print(f"    mean payoff      : {format_decimal(report.sampled_mean)}")
        print(f"    coarse final sum : {format_decimal(report.sampled_final)} "
              f"(cell {report.sampled_final_cell})")
        print(f"    verdict          : {_verdict_text(report.sampled_verdict)}")
        counts = "  ".join(f"{n}:{c}" for n, c in sorted(report.round_counts.items()))
        print(f"    round counts     : {counts}")
        print("  exact-addition control (singleton grid):")
        print(f"    verdict          : {_verdict_text(report.classical_verdict)}")
        print(f"    final sum        : {format_decimal(report.classical_final)}")
        return 0
    report = coarse_value(eps, depth=args.depth)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        _print_valuation_text(report)
    return 0


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarsesum",
        description="Coarse partitions of the number line and absorption-based "
                    "coarse addition.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="print cells, representatives, and margins")
    _add_partition_flags(p)
    p.add_argument("--cells", type=int, default=8, metavar="N",
                   help="how many cells to print (default: 8)")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("fold", help="coarsely fold numbers from a file or stdin")
    _add_partition_flags(p)
    p.add_argument("--input", metavar="PATH", default="-",
                   help="file of numbers, one per line ('-' for stdin; blank "
                        "lines and #-comments are ignored)")
    p.add_argument("--format", choices=["table", "json", "csv"], default="table")
    p.set_defaults(func=cmd_fold)

    p = sub.add_parser("inert", help="judge a generated stream for inertness")
    _add_partition_flags(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--const", metavar="C", help="constant stream of C")
    g.add_argument("--harmonic", action="store_true", help="stream 1, 1/2, 1/3, ...")
    g.add_argument("--geometric", nargs=2, metavar=("COEF", "RATIO"),
                   help="stream COEF*RATIO**t for t = 1, 2, ...")
    g.add_argument("--from-file", metavar="PATH", help="read the stream from a file")
    p.add_argument("--horizon", type=int, default=1000, metavar="N",
                   help="maximum steps to fold (default: 1000)")
    p.add_argument("--bound", metavar="B",
                   help="upper bound on the stream values; enables the certified "
                        "margin early exit")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_inert)

    p = sub.add_parser("stpete", help="value the doubling gamble coarsely")
    p.add_argument("--eps", required=True, metavar="P/Q", help="cell-growth rate")
    p.add_argument("--depth", type=int, default=10_000, metavar="N",
                   help="length of the expected-increment stream (default: 10000)")
    p.add_argument("--trials", type=int, default=0, metavar="N",
                   help="also draw N payoffs and fold them (default: 0, skip)")
    p.add_argument("--seed", type=int, default=0, metavar="S",
                   help="sampling seed (default: 0)")
    p.add_argument("--truncation", type=int, default=64, metavar="D",
                   help="gamble truncation depth for sampling (default: 64)")
    p.add_argument("--allow-small-eps", action="store_true",
                   help="permit eps < 2, where formula and scan disagree")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_stpete)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CoarseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
