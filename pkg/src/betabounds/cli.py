"""Command-line front end.

Records go to ``--out`` (default stdout) one JSON object per line; the
human-readable summary goes to stderr.  Exit status: 0 when nothing
failed, 1 on any fail verdict, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import sys

from . import harness
from .certifier import (DEFAULT_DENSITY, certify_alpha_m_convex, certify_convex,
                        certify_m_convex, certify_quasi_convex)
from .errors import BetaBoundsError
from .function_model import ClassLabel, builtin_catalog, get_spec
from .quadrature import DEFAULT_TOL
from .records import write_records, write_summary_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="quadrature tolerance (absolute)")
    p.add_argument("--out", default="-", help="record output path, '-' for stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--max-cases", type=int, default=harness.MAX_CASES,
                   help="refuse sweeps larger than this")
    p.add_argument("--seed", type=int, default=0, help="reserved; all operations are deterministic")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betabounds",
        description="Numerically verify Beta-function bounds on weighted integrals "
                    "of (alpha, m)-convex and quasi-convex functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list the builtin specimens")
    _common(p)

    p = sub.add_parser("certify", help="check one class membership on a grid")
    _common(p)
    p.add_argument("--spec", required=True)
    p.add_argument("--class", dest="label", required=True, choices=[c.value for c in ClassLabel])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--n", type=int, default=DEFAULT_DENSITY, help="grid density (subintervals per axis)")

    p = sub.add_parser("lemma-check", help="change-of-variables identity residuals over the grid")
    _common(p)
    p.add_argument("--grid", default="default")
    p.add_argument("--specs", default="all", help="comma-separated ids or 'all'")

    p = sub.add_parser("verify", help="one theorem instance")
    _common(p)
    p.add_argument("--spec", required=True)
    p.add_argument("--theorem", required=True, choices=harness.THEOREMS)
    for name in ("a", "b", "p", "q"):
        p.add_argument(f"--{name}", type=float, required=True)
    for name in ("alpha", "m", "k", "l"):
        p.add_argument(f"--{name}", type=float)
    p.add_argument("--direction", choices=harness.DIRECTIONS)

    p = sub.add_parser("sweep", help="all theorems over a parameter grid")
    _common(p)
    p.add_argument("--grid", default="default", help="'default' or a grid file")
    p.add_argument("--theorems", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--specs", default="all", help="comma-separated ids or 'all'")
    p.add_argument("--summary-csv", help="also write the per-theorem summary table here")

    p = sub.add_parser("reduce-check", help="audit the algebraic special cases")
    _common(p)
    p.add_argument("--grid", default="default")
    return parser


def _specs(arg):
    if arg == "all":
        return builtin_catalog()
    return [get_spec(s.strip()) for s in arg.split(",") if s.strip()]


def _theorems(arg):
    if arg == "all":
        return list(harness.THEOREMS)
    names = [t.strip() for t in arg.split(",") if t.strip()]
    for t in names:
        if t not in harness.THEOREMS:
            raise BetaBoundsError(f"unknown theorem {t!r}")
    return names


@contextlib.contextmanager
def _output(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _cmd_catalog(args, out):
    recs = [{"id": s.id, "domain": [s.lo, s.hi], "formula": s.formula,
             "claims": [c.describe() for c in s.claims]} for s in builtin_catalog()]
    write_records(recs, out)
    print(f"{len(recs)} specimens", file=sys.stderr)
    return EXIT_OK


def _cmd_certify(args, out):
    spec = get_spec(args.spec)
    label = ClassLabel(args.label)
    if label is ClassLabel.ALPHA_M_CONVEX:
        cert = certify_alpha_m_convex(spec, args.alpha, args.m, args.n)
    elif label is ClassLabel.M_CONVEX:
        cert = certify_m_convex(spec, args.m, args.n)
    elif label is ClassLabel.CONVEX:
        cert = certify_convex(spec, args.n)
    else:
        cert = certify_quasi_convex(spec, args.n)
    rec = {"spec": spec.id, **cert.as_record()}
    write_records([rec], out)
    print(f"{spec.id} {label.value}: {cert.verdict}"
          + (f" witness (x, y, t) = {cert.witness}" if cert.witness else ""), file=sys.stderr)
    return EXIT_OK if cert.passed else EXIT_FAIL


def _cmd_lemma(args, out):
    grid = harness.ParamGrid.load(args.grid)
    recs = harness.lemma_check(_specs(args.specs), grid, args.tol)
    write_records(recs, out)
    fails = sum(r["verdict"] == "fail" for r in recs)
    worst = max((r["residual"] for r in recs if r["residual"] is not None), default=0.0)
    print(f"lemma-check: {len(recs)} cases, {fails} over 2*tol, worst residual {worst:.3g}",
          file=sys.stderr)
    return EXIT_FAIL if fails else EXIT_OK


def _cmd_verify(args, out):
    spec = get_spec(args.spec)
    params = {"a": args.a, "b": args.b, "p": args.p, "q": args.q}
    for name in harness.theorem_axes(args.theorem):
        value = getattr(args, name)
        if value is None:
            raise BetaBoundsError(f"{args.theorem} needs --{name}")
        params[name] = value
    harness.validate_params(args.theorem, params)
    report = harness.verify_case(spec, args.theorem, params, args.tol)
    write_records([report.as_record()], out)
    print(f"{report.case_id}: {report.verdict}"
          + (f" slack={report.slack:.6g}" if report.slack is not None else ""), file=sys.stderr)
    return EXIT_FAIL if report.verdict == "fail" else EXIT_OK


def _print_summary(rows):
    header = f"{'theorem':<8}{'cases':>8}{'passes':>8}{'fails':>7}{'skips':>8}  min_slack"
    print(header, file=sys.stderr)
    for r in rows:
        ms = "-" if r["min_slack"] is None else f"{r['min_slack']:.3e}"
        print(f"{r['theorem']:<8}{r['cases']:>8}{r['passes']:>8}{r['fails']:>7}{r['skips']:>8}  {ms}",
              file=sys.stderr)


def _cmd_sweep(args, out):
    grid = harness.ParamGrid.load(args.grid)
    reports = harness.sweep(_specs(args.specs), grid, _theorems(args.theorems), args.tol,
                            jobs=args.jobs, max_cases=args.max_cases)
    write_records((r.as_record() for r in reports), out)
    rows = harness.summarize(reports)
    _print_summary(rows)
    if args.summary_csv:
        with open(args.summary_csv, "w", newline="") as fh:
            write_summary_csv([{**r, "min_slack": "" if r["min_slack"] is None else r["min_slack"]}
                               for r in rows], fh)
    return EXIT_FAIL if any(r["fails"] for r in rows) else EXIT_OK


def _cmd_reduce(args, out):
    grid = harness.ParamGrid.load(args.grid)
    residuals = harness.reduction_audit(grid)
    write_records([r.as_record() for r in residuals], out)
    for r in residuals:
        print(f"{r.name:<40} max={r.max_residual:.3e} n={r.count} {'ok' if r.ok else 'FAIL'}",
              file=sys.stderr)
    return EXIT_OK if all(r.ok for r in residuals) else EXIT_FAIL


_COMMANDS = {
    "catalog": _cmd_catalog,
    "certify": _cmd_certify,
    "lemma-check": _cmd_lemma,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "reduce-check": _cmd_reduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.tol > 0:
        parser.error("--tol must be positive")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        with _output(args.out) as out:
            return _COMMANDS[args.command](args, out)
    except (BetaBoundsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
