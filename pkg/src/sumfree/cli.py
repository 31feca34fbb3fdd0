"""Command-line front end.

Examples::

    sumfree formula --k 1 --l 2 --n 7
    sumfree formula --group "Z_3 x Z_3"
    sumfree search --k 1 --l 3 --n 12
    sumfree shifted --k 1 --l 2 --n 6 --C "{0,1}"
    sumfree verify --k 1 --l 3 --from 1 --to 12 --parallel 4
    sumfree survey --k 2 --l 3 --from 1 --to 30 --format csv --cache-dir .cache
    sumfree witness --k 1 --l 2 --n 6

Exit status: 0 on success, 1 on usage or contract errors, 2 when ``verify``
finds a formula/oracle mismatch. The cache directory may also be given by the
``SUMFREE_CACHE_DIR`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .formulas import interval_witness, lambda_cyclic, lambda_sumfree_abelian
from .groups import FiniteAbelianGroup, cyclic, parse_group, parse_subset
from .rational import format_rational
from .search import SearchConfig, max_shifted_sum_free, max_sum_free
from .survey import (
    SearchCache,
    SurveyRecord,
    VerificationError,
    shifted_argmin,
    survey_shifted,
    verify_range,
    write_csv,
    write_jsonl,
)

CACHE_ENV = "SUMFREE_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int, default=1)
    common.add_argument("--l", type=int, default=2)
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")

    search_opts = _Parser(add_help=False)
    search_opts.add_argument("--parallel", type=int, default=0, metavar="N")
    search_opts.add_argument("--node-budget", type=int, default=None, metavar="B")
    search_opts.add_argument("--no-symmetry", action="store_true", help="disable dilation pruning")

    group_opts = _Parser(add_help=False)
    g = group_opts.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--group", type=str)

    range_opts = _Parser(add_help=False)
    range_opts.add_argument("--from", dest="n_lo", type=int, required=True)
    range_opts.add_argument("--to", dest="n_hi", type=int, required=True)
    range_opts.add_argument("--cache-dir", default=None, metavar="PATH")

    parser = _Parser(prog="sumfree", description="Exact (k,l)-sum-free densities in finite abelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("formula", parents=[common, group_opts], help="closed-form maximum density")
    sub.add_parser("search", parents=[common, group_opts, search_opts], help="exact search")
    p = sub.add_parser("shifted", parents=[common, group_opts, search_opts], help="exact C-shifted search")
    p.add_argument("--C", dest="C", default="{0}")
    sub.add_parser("verify", parents=[common, range_opts, search_opts], help="formula vs. search sweep")
    p = sub.add_parser("survey", parents=[common, range_opts, search_opts], help="{0,1}-shifted sweep")
    p.add_argument("--step", type=int, default=1)
    p = sub.add_parser("witness", parents=[common], help="interval witness in Z_n")
    p.add_argument("--n", type=int, required=True)
    return parser


def _group(args) -> FiniteAbelianGroup:
    return cyclic(args.n) if args.n is not None else parse_group(args.group)


def _config(args) -> SearchConfig:
    return SearchConfig(
        parallel_branches=args.parallel,
        node_budget=args.node_budget,
        symmetry_reduction=not args.no_symmetry,
    )


def _cache(args) -> SearchCache | None:
    path = args.cache_dir or os.environ.get(CACHE_ENV)
    return SearchCache(path) if path else None


def _formula_for(G: FiniteAbelianGroup, k: int, l: int):
    if G.is_cyclic_literal:
        return lambda_cyclic(k, l, G.order)
    if (k, l) != (1, 2):
        raise UsageError(f"no closed formula for (k,l)=({k},{l}) on non-cyclic {G}")
    return lambda_sumfree_abelian(G)


def _cmd_formula(args, out) -> int:
    G = _group(args)
    res = _formula_for(G, args.k, args.l)
    if args.format == "json":
        kw = {"n": G.order} if G.is_cyclic_literal else {"group": G}
        out.write(json.dumps(res.to_record(args.k, args.l, **kw)) + "\n")
    elif args.format == "csv":
        write_csv([SurveyRecord(G.order, args.k, args.l, res.value)], out)
    else:
        out.write(f"lambda = {format_rational(res.value)} (argmax d = {res.argmax_divisor})\n")
    return 0


def _emit_outcome(args, outcome, label: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps(outcome.to_record()) + "\n")
    elif args.format == "csv":
        G = outcome.group
        formula = _formula_for(G, args.k, args.l).value
        shifted = outcome.C is not None and outcome.C.bits != 1
        rec = SurveyRecord(
            G.order, args.k, args.l, formula,
            oracle_value=None if shifted else outcome.density,
            shifted_value=outcome.density if shifted else None,
            shifted_equals_bound=(outcome.density == Fraction(1, args.k + args.l)) if shifted else None,
            witness=outcome.witness,
        )
        write_csv([rec], out)
    else:
        status = "complete" if outcome.complete else "INCOMPLETE (node budget exhausted)"
        out.write(f"{label} = {format_rational(outcome.density)}, witness {outcome.witness}\n")
        out.write(f"max |A| = {outcome.max_cardinality}, nodes = {outcome.nodes_visited}, {status}\n")


def _cmd_search(args, out) -> int:
    outcome = max_sum_free(_group(args), args.k, args.l, _config(args))
    _emit_outcome(args, outcome, "lambda", out)
    return 0


def _cmd_shifted(args, out) -> int:
    G = _group(args)
    C = parse_subset(args.C, G, reduce_mod=G.is_cyclic_literal)
    outcome = max_shifted_sum_free(G, args.k, args.l, C, _config(args))
    _emit_outcome(args, outcome, "lambda^C", out)
    return 0


def _opt(x: Fraction | None) -> str:
    return "-" if x is None else format_rational(x)


def _write_records(args, records, out, columns) -> None:
    if args.format == "csv":
        write_csv(records, out)
        return
    if args.format == "json":
        write_jsonl(records, out)
        return
    names = [c[0] for c in columns]
    rows = [[str(c[1](r)) for c in columns] for r in records]
    widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(names)]
    out.write("  ".join(h.rjust(w) for h, w in zip(names, widths)).rstrip() + "\n")
    for row in rows:
        out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _cmd_verify(args, out) -> int:
    try:
        records = verify_range(args.k, args.l, args.n_lo, args.n_hi, _config(args), _cache(args))
    except VerificationError as exc:
        _write_records(args, exc.records, out, _VERIFY_COLUMNS)
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    _write_records(args, records, out, _VERIFY_COLUMNS)
    return 0


_VERIFY_COLUMNS = [
    ("n", lambda r: r.n),
    ("formula", lambda r: format_rational(r.formula_value)),
    ("oracle", lambda r: _opt(r.oracle_value)),
    ("match", lambda r: "-" if r.oracle_value is None else ("yes" if r.oracle_value == r.formula_value else "NO")),
    ("witness", lambda r: "-" if r.witness is None else r.witness),
]

_SURVEY_COLUMNS = [
    ("n", lambda r: r.n),
    ("formula", lambda r: format_rational(r.formula_value)),
    ("shifted", lambda r: _opt(r.shifted_value)),
    ("bound_eq", lambda r: "-" if r.shifted_equals_bound is None else str(r.shifted_equals_bound).lower()),
    ("witness", lambda r: "-" if r.witness is None else r.witness),
]


def _cmd_survey(args, out) -> int:
    if args.step < 1:
        raise UsageError("--step must be >= 1")
    records = survey_shifted(args.k, args.l, args.n_lo, args.n_hi, _config(args), _cache(args), step=args.step)
    _write_records(args, records, out, _SURVEY_COLUMNS)
    if args.format == "text":
        best = shifted_argmin(records)
        if best is not None:
            out.write(f"argmin n = {best[0]} (lambda^C = {format_rational(best[1])})\n")
    return 0


def _cmd_witness(args, out) -> int:
    A = interval_witness(args.k, args.l, args.n)
    if args.format == "json":
        out.write(json.dumps({"k": args.k, "l": args.l, "n": args.n, "witness": str(A),
                              "density": format_rational(A.density())}) + "\n")
    else:
        out.write(f"{A} (density {format_rational(A.density())})\n")
    return 0


_COMMANDS = {
    "formula": _cmd_formula,
    "search": _cmd_search,
    "shifted": _cmd_shifted,
    "verify": _cmd_verify,
    "survey": _cmd_survey,
    "witness": _cmd_witness,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"sumfree: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
