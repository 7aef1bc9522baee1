"""Command-line surface: n, bounds, sweep, verify, relations.

Output is deterministic for a fixed invocation and precision mode: reals
render with 12 significant digits, integers exactly.  Exit codes: 0 on
success, 1 when a verification suite fails, 2 for usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from .bounds import (
    BoundParams,
    BoundsReport,
    DomainError,
    compute_n,
    full_report,
    nestimate,
)
from .geometry import displacement
from .numerics import DOUBLE, HALF_LOG3, LOG3, PRECISION_MODES
from .packing import GeneratorPair, search_relation
from .verify import SUITES, run_suites

SWEEP_HEADER = "lambda,N,nestimate,vol_exact,vol_closed,index_bound,rank_bound,rel_len"


def _fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return format(value, ".12g")


def _json_ready(value: Optional[float]) -> Optional[float]:
    # round-trip through the 12-significant-digit rendering so that text,
    # csv and json outputs carry identical numbers
    if value is None:
        return None
    return float(_fmt(value))


def _report_fields(report: BoundsReport) -> dict:
    return {
        "lambda": _json_ready(report.lam),
        "N": report.n_of_lambda,
        "nestimate": _json_ready(report.nestimate),
        "vol_exact": _json_ready(report.volume_exact),
        "vol_closed": _json_ready(report.volume_closed),
        "index_bound": _json_ready(report.index_bound),
        "rank_bound": _json_ready(report.rank_bound),
        "rel_len": report.relation_length_bound,
    }


def _csv_row(report: BoundsReport) -> str:
    fields = _report_fields(report)
    return ",".join(
        [
            _fmt(report.lam),
            str(fields["N"]),
            _fmt(report.nestimate),
            _fmt(report.volume_exact),
            _fmt(report.volume_closed),
            _fmt(report.index_bound),
            _fmt(report.rank_bound),
            str(fields["rel_len"]),
        ]
    )


def _params(args: argparse.Namespace, lam: float) -> BoundParams:
    return BoundParams(
        lam=lam,
        mu=args.mu,
        packing_constant=args.packing_constant,
        weeks_volume=args.v0,
    )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mu", type=float, default=0.104, help="Margulis constant (default 0.104)")
    parser.add_argument(
        "--packing-constant",
        type=float,
        default=2667.0,
        dest="packing_constant",
        help="constant multiplying the volume term (default 2667)",
    )
    parser.add_argument(
        "--v0", type=float, default=0.9427073628, help="smallest manifold volume (default: Weeks)"
    )
    parser.add_argument(
        "--precision",
        choices=PRECISION_MODES,
        default=DOUBLE,
        help="arithmetic mode: double, or extended (256-bit certified)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default="text",
        help="output format (default text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="margulis",
        description="Explicit Margulis-number bounds: the integer threshold N(lambda), "
        "volume/index/rank bounds, parameter sweeps, and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_n = sub.add_parser("n", help="compute N(lambda), beta, and the closed-form majorant")
    p_n.add_argument("--lambda", dest="lam", type=float, required=True)
    _add_common(p_n)

    p_bounds = sub.add_parser("bounds", help="full bound report for one lambda")
    p_bounds.add_argument("--lambda", dest="lam", type=float, required=True)
    _add_common(p_bounds)

    p_sweep = sub.add_parser("sweep", help="CSV report over a lambda grid")
    p_sweep.add_argument("--min", dest="lo", type=float, required=True)
    p_sweep.add_argument("--max", dest="hi", type=float, required=True)
    p_sweep.add_argument("--step", type=float, required=True)
    p_sweep.add_argument("--out", default="-", help="output file (default stdout)")
    p_sweep.add_argument(
        "--jobs", type=int, default=1, help="rows computed concurrently (default 1)"
    )
    _add_common(p_sweep)

    p_verify = sub.add_parser(
        "verify",
        help="run invariant suites, one PASS/FAIL line each; suites exercise "
        "the canonical constants, so --mu/--v0/--packing-constant are ignored here",
    )
    p_verify.add_argument(
        "--suite",
        choices=("all",) + tuple(SUITES),
        default="all",
    )
    _add_common(p_verify)

    p_rel = sub.add_parser(
        "relations",
        help="search for the shortest relation among two matrix generators; "
        "the guaranteed budget 8*N(lambda) usually exceeds any enumerable "
        "length, so --max-len sets the practical cap",
    )
    p_rel.add_argument("--input", required=True, help="generator JSON file")
    p_rel.add_argument("--max-len", dest="max_len", type=int, default=8)
    p_rel.add_argument("--tol", type=float, default=1e-9)
    _add_common(p_rel)

    return parser


def cmd_n(args: argparse.Namespace) -> int:
    params = _params(args, args.lam)
    n = compute_n(params, args.precision)
    beta = 1.0 / (LOG3 - 2.0 * params.lam)
    nest = nestimate(params) if params.lam > 0.1 else None
    if args.format == "json":
        print(
            json.dumps(
                {
                    "lambda": _json_ready(params.lam),
                    "N": n,
                    "beta": _json_ready(beta),
                    "nestimate": _json_ready(nest),
                }
            )
        )
    elif args.format == "csv":
        print("lambda,N,beta,nestimate")
        print(f"{_fmt(params.lam)},{n},{_fmt(beta)},{_fmt(nest)}")
    else:
        print(f"lambda    = {_fmt(params.lam)}")
        print(f"N         = {n}")
        print(f"beta      = {_fmt(beta)}")
        if nest is None:
            print("nestimate = unavailable (requires lambda > 0.1)")
        else:
            print(f"nestimate = {_fmt(nest)}")
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    report = full_report(_params(args, args.lam), args.precision)
    if args.format == "json":
        print(json.dumps(_report_fields(report)))
    elif args.format == "csv":
        print(SWEEP_HEADER)
        print(_csv_row(report))
    else:
        fields = _report_fields(report)
        width = max(len(k) for k in fields)
        for key, value in fields.items():
            shown = "unavailable" if value is None else value
            print(f"{key:<{width}} = {shown}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    if not (0.1 < args.lo < args.hi < HALF_LOG3):
        raise DomainError(
            f"sweep range must satisfy 0.1 < min < max < log(3)/2 = {HALF_LOG3:.9f}, "
            f"got [{args.lo}, {args.hi}]"
        )
    if not args.step > 0.0:
        raise DomainError(f"step must be positive, got {args.step}")
    count = int(math.floor((args.hi - args.lo) / args.step + 1e-9)) + 1
    grid = [args.lo + i * args.step for i in range(count)]

    def row(lam: float) -> str:
        return _csv_row(full_report(_params(args, lam), args.precision))

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(row, grid))
    else:
        rows = [row(lam) for lam in grid]

    text = "\n".join([SWEEP_HEADER, *rows]) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    labelled, all_passed = run_suites(names)
    for suite, result in labelled:
        status = "PASS" if result.passed else "FAIL"
        detail = f" ({result.detail})" if result.detail else ""
        print(f"[{suite}] {result.name}: {status}{detail}")
    passed = sum(result.passed for _, result in labelled)
    print(f"{passed}/{len(labelled)} checks passed")
    return 0 if all_passed else 1


def cmd_relations(args: argparse.Namespace) -> int:
    try:
        gens = GeneratorPair.load(args.input)
    except FileNotFoundError as exc:
        raise DomainError(f"cannot read generator file: {exc}") from exc
    word = search_relation(gens, args.max_len, args.tol)
    disp_x = displacement(gens.x, gens.basepoint)
    disp_y = displacement(gens.y, gens.basepoint)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "relation": None if word is None else str(word),
                    "length": None if word is None else len(word),
                    "max_length": args.max_len,
                    "tol": args.tol,
                    "displacement_x": _json_ready(disp_x),
                    "displacement_y": _json_ready(disp_y),
                }
            )
        )
    else:
        print(f"generators       = {args.input}")
        print(f"displacement x   = {_fmt(disp_x)} (at the basepoint)")
        print(f"displacement y   = {_fmt(disp_y)}")
        print(f"search budget    = lengths 1..{args.max_len} at tol {args.tol:g}")
        if word is None:
            print(f"relation         = none found up to length {args.max_len}")
        else:
            print(f"relation         = {word} (length {len(word)})")
    return 0


_HANDLERS = {
    "n": cmd_n,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "relations": cmd_relations,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
