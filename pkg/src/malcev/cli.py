"""Command-line interface.

Exit codes: 0 success, 1 when a verified item failed, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .basis import verify_basis
from .catalog import load_catalog, load_spec_file
from .parser import ParseError, parse
from .report import Config, default_jobs, dims, dumps, run_items, validate
from .subdirect import zero_test
from .terms import XYZ, AlphabetError, MultiDegree
from .tideal import DEFAULT_DEGREE_CAP

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _param_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        bounds = (int(lo), int(hi)) if sep else (0, int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if not 0 <= bounds[0] <= bounds[1]:
        raise argparse.ArgumentTypeError(f"need 0 <= LO <= HI, got {text!r}")
    return bounds


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return v


def _positive(text: str) -> int:
    v = _natural(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive number")
    return v


def _add_run_options(p: argparse.ArgumentParser):
    p.add_argument("--degree-cap", type=_positive, default=DEFAULT_DEGREE_CAP,
                   help="highest degree decided by T-ideal membership (default %(default)s)")
    p.add_argument("--subst-cap", type=_positive, default=Config.subst_cap,
                   help="highest degree of substitution zero tests (default %(default)s)")
    p.add_argument("--sweep-cap", type=_positive, default=Config.sweep_cap,
                   help="highest total degree of model sweeps (default %(default)s)")
    p.add_argument("--params", type=_param_range, default=(0, 2), metavar="LO..HI",
                   help="instance range for family parameters (default 0..2)")
    p.add_argument("--jobs", type=_positive, default=None,
                   help="worker processes (default: $MALCEV_JOBS or 1)")
    p.add_argument("--mode", choices=("symbolic", "full", "randomized"), default="symbolic",
                   help="m7 zero test used by substitution checks")
    p.add_argument("--seed", type=_natural, default=0)
    p.add_argument("--trials", type=_positive, default=3, help="randomized-mode trials")
    p.add_argument("--strategy", choices=("auto", "substitution"), default="auto",
                   help="'substitution' skips T-ideal proofs for checks that allow both")
    p.add_argument("--timings", action="store_true", help="add per-item seconds to the report")
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="malcev",
                                 description="Exact computations in the free Malcev algebra on x, y, z.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zero", help="is an expression zero in M?")
    p.add_argument("expr")
    p.add_argument("--mode", choices=("symbolic", "full", "randomized"), default="symbolic")
    p.add_argument("--seed", type=_natural, default=0)

    for name, text in (("dim", "graded dimensions of one multidegree"),
                       ("basis", "check the basis of J(M,M,M) in one multidegree")):
        p = sub.add_parser(name, help=text)
        for v in ("dx", "dy", "dz"):
            p.add_argument(v, type=_natural)

    p = sub.add_parser("check-identity", help="verify the items of a spec file")
    p.add_argument("--spec", type=Path, required=True)
    _add_run_options(p)

    p = sub.add_parser("verify-paper", help="verify the whole bundled catalog")
    _add_run_options(p)
    return ap


def _multidegree(args) -> MultiDegree:
    d = MultiDegree((args.dx, args.dy, args.dz))
    if d.total < 1:
        raise UsageError("multidegree must have total degree >= 1")
    return d


def _config(args) -> Config:
    try:
        return Config(degree_cap=args.degree_cap, subst_cap=args.subst_cap,
                      sweep_cap=args.sweep_cap, params=args.params, mode=args.mode,
                      seed=args.seed, trials=args.trials, strategy=args.strategy,
                      timings=args.timings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit_report(report: dict, out: Path | None) -> int:
    text = dumps(report)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")
        s = report["summary"]
        print(f"{s['total']} items: {s['proved-consequence']} proved, "
              f"{s['verified-substitutions']} verified at instances, {s['failed']} failed, "
              f"{s['skipped']} skipped; report written to {out}")
        for item in report["items"]:
            if item["status"] == "failed":
                print(f"FAILED {item['id']}: {item['title']}")
    return EXIT_FAILED if report["summary"]["failed"] else EXIT_OK


def _run(args) -> int:
    if args.command == "zero":
        e = parse(args.expr, XYZ)
        print("true" if zero_test(e, args.mode, seed=args.seed).zero else "false")
        return EXIT_OK
    if args.command == "dim":
        print(json.dumps(dims(_multidegree(args)), separators=(",", ":")))
        return EXIT_OK
    if args.command == "basis":
        print(json.dumps(verify_basis(_multidegree(args)).to_json(), separators=(",", ":")))
        return EXIT_OK
    config = _config(args)
    jobs = args.jobs or default_jobs()
    if args.command == "check-identity":
        try:
            items = load_spec_file(args.spec)
            for item in items:
                validate(item, config)
        except (ParseError, AlphabetError):
            raise
        except (OSError, json.JSONDecodeError, KeyError, NameError, TypeError,
                ValueError, SyntaxError) as exc:
            raise UsageError(f"bad spec file {args.spec}: {exc}") from None
    else:
        items = load_catalog()
    return _emit_report(run_items(items, config, jobs), args.out)


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _run(args)
    except (ParseError, AlphabetError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
