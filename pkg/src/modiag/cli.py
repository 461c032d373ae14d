"""Batch verification interface with deterministic JSON reports.

Every subcommand runs an exact verification (there are no tolerances
anywhere) and emits a report {command, params, status, details,
elapsed_ms}.  All report fields except elapsed_ms are byte-deterministic
for identical inputs.  Exit codes: 0 for a verified identity or a valid
certificate (in either direction), 1 for a mathematical discrepancy, 2 for
a usage error.

    modiag verify combinatorics --max-n 12
    modiag verify product --m 2 --n 3
    modiag verify blowup --n 5 --e 3 [--jobs 4]
    modiag verify stability --m 3 --s 2
    modiag verify bundle --m 3 --r 2 --defect 1
    modiag verify bundle-vanishing --m 3 --r 1 --case curve
    modiag verify sommalt --m 3 --ambient 4
    modiag doublecover table --m 3 --format csv
    modiag doublecover solve --m 4 --out report.json
    modiag homology --m 5 --n 2 --d 2
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field

from . import blowups, bundles, diagonals, doublecover, exactalg, homology, products
from .exactalg import IntPolynomial, alternating_binomial_vanishes, binom, format_rational

VERIFIED = "verified"
FAILED = "failed"
INFEASIBLE = "infeasible"
USAGE_ERROR = "usage_error"


@dataclass
class Report:
    command: str
    params: dict
    status: str
    details: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {"command": self.command, "params": self.params, "status": self.status,
             "details": self.details, "elapsed_ms": self.elapsed_ms},
            indent=2, sort_keys=True)


def _exit_code(status: str) -> int:
    if status in (VERIFIED, INFEASIBLE):
        return 0
    if status == FAILED:
        return 1
    return 2


def _cap(failures: list, limit: int = 25) -> list:
    return failures[:limit]


def _run_combinatorics(args) -> Report:
    max_n = args.max_n
    if max_n < 1:
        raise ValueError("--max-n must be positive")
    failures = []
    pascal = 0
    for u in range(-max_n, max_n + 1):
        for k in range(1, max_n + 1):
            pascal += 1
            if binom(u, k) != binom(u - 1, k) + binom(u - 1, k - 1):
                failures.append({"kind": "pascal", "u": u, "k": k})
    alternating = 0
    for n in range(1, max_n + 1):
        for d in range(n):
            alternating += 1
            if not alternating_binomial_vanishes(n, IntPolynomial.monomial(d)):
                failures.append({"kind": "alternating", "n": n, "d": d})
    conventions = binom(4, -1) == 0 and all(binom(u, 0) == 1 for u in range(-3, 4))
    if not conventions:
        failures.append({"kind": "conventions"})
    status = VERIFIED if not failures else FAILED
    return Report("verify combinatorics", {"max_n": max_n}, status,
                  {"pascal_checked": pascal, "alternating_checked": alternating,
                   "failures": _cap(failures)})


def _run_product(args) -> Report:
    ctx = products.ProductContext(args.m, args.n)
    failures = products.kunneth_failures(ctx, jobs=args.jobs)
    status = VERIFIED if not failures else FAILED
    return Report("verify product", {"m": args.m, "n": args.n, "jobs": args.jobs},
                  status, {"e": ctx.e, "failures": _cap(_jsonable(failures))})


def _run_blowup(args) -> Report:
    ctx = blowups.BlowupContext(args.n, args.e)
    failures = blowups.blowup_failures(ctx, jobs=args.jobs)
    status = VERIFIED if not failures else FAILED
    return Report("verify blowup", {"n": args.n, "e": args.e, "jobs": args.jobs},
                  status, {"multi_indices": len(blowups.chern_multi_indices(ctx)),
                           "failures": _cap(_jsonable(failures))})


def _run_stability(args) -> Report:
    ok = diagonals.verify_stability(args.m, args.s)
    return Report("verify stability", {"m": args.m, "s": args.s},
                  VERIFIED if ok else FAILED,
                  {"normal_form_zero": ok})


def _run_bundle(args) -> Report:
    ok = bundles.top_bound_check(args.m, args.r, args.defect)
    bound = args.m - 1 if args.defect == 1 else args.m - 2
    return Report("verify bundle",
                  {"m": args.m, "r": args.r, "defect": args.defect},
                  VERIFIED if ok else FAILED,
                  {"top_size_bound": bound,
                   "equality_case_checked": args.defect == 2})


_CASES = {"curve": None, "surface-gamma": bundles.GAMMA_LOWER,
          "surface-point": bundles.CHERN_POINT}


def _run_bundle_vanishing(args) -> Report:
    if args.case == "curve":
        report = bundles.verify_fibration_curve(args.m, args.r)
    else:
        report = bundles.verify_fibration_surface(args.m, args.r, _CASES[args.case])
    certs = [{"H": list(h), "kind": cert.kind} for h, cert in report.certificates]
    status = VERIFIED if report.ok else FAILED
    return Report("verify bundle-vanishing",
                  {"m": args.m, "r": args.r, "case": args.case},
                  status,
                  {"certificates": certs, "failures": _cap(_jsonable(report.failures)),
                   **report.details})


def _run_sommalt(args) -> Report:
    report = diagonals.marked_projection_report(args.m, args.ambient)
    cert = report["certificate"]
    ok = cert.is_solution and report["checked"]
    return Report("verify sommalt", {"m": args.m, "ambient": args.ambient},
                  VERIFIED if ok else FAILED,
                  {"certificate": cert.kind,
                   "recheck_passed": report["checked"],
                   "generators": len(report["generators"]),
                   "empty_marker_convention": "dropped"})


def _run_doublecover_table(args) -> Report:
    table = doublecover.coefficient_table(args.m)
    entries = [[format_rational(x) for x in row] for row in table.entries]
    return Report("doublecover table", {"m": args.m, "format": args.format},
                  VERIFIED,
                  {"rows": table.row_labels(), "columns": table.column_labels(),
                   "entries": entries})


def _table_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + report.details["columns"])
    for label, row in zip(report.details["rows"], report.details["entries"]):
        writer.writerow([label] + row)
    return buf.getvalue()


def _run_doublecover_solve(args) -> Report:
    result = doublecover.solve_double_cover(args.m)
    if isinstance(result, doublecover.DoubleCoverSolution):
        details = result.to_json_obj()
        details["certificate"] = "solution"
        status = VERIFIED
    else:
        labels = [key.label() for key in doublecover.solve_row_keys(args.m)]
        details = {"status": "infeasible", "m": args.m,
                   "certificate": "infeasible",
                   "functional": [[label, format_rational(x)]
                                  for label, x in zip(labels, result.vector)]}
        # the solve must succeed at the two established orders; an
        # infeasibility there is a discrepancy, above them it is a finding
        status = INFEASIBLE if args.m >= 4 else FAILED
    return Report("doublecover solve", {"m": args.m, "out": args.out}, status, details)


def _run_homology(args) -> Report:
    decision = homology.torsion_decision(args.m, args.n, args.d)
    consistent = decision.torsion == (args.m > args.n + args.d)
    return Report("homology", {"m": args.m, "n": args.n, "d": args.d},
                  VERIFIED if consistent else FAILED,
                  decision.to_json_obj() | {"threshold_consistent": consistent})


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "denominator") and not isinstance(obj, int):
        return format_rational(obj)
    return obj


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modiag",
        description="Exact verification suites for modified diagonal identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)

    p = vsub.add_parser("combinatorics", help="binomial identities")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(run=_run_combinatorics)

    p = vsub.add_parser("product", help="product alternating sums")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=_run_product)

    p = vsub.add_parser("blowup", help="blow-up coefficient identities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(run=_run_blowup)

    p = vsub.add_parser("stability", help="higher modified diagonals rewrite to zero")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(run=_run_stability)

    p = vsub.add_parser("bundle", help="top-entry bounds for bundle multi-indices")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--defect", type=int, required=True, choices=(1, 2))
    p.set_defaults(run=_run_bundle)

    p = vsub.add_parser("bundle-vanishing", help="fibration vanishing certificates")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--case", required=True, choices=sorted(_CASES))
    p.set_defaults(run=_run_bundle_vanishing)

    p = vsub.add_parser("sommalt", help="marked alternating-sum identity")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--ambient", type=int, required=True)
    p.set_defaults(run=_run_sommalt)

    dc = sub.add_parser("doublecover", help="double-cover calculus")
    dsub = dc.add_subparsers(dest="action", required=True)

    p = dsub.add_parser("table", help="appended-list coefficient table")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(run=_run_doublecover_table)

    p = dsub.add_parser("solve", help="solve for the upstairs modified diagonal")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(run=_run_doublecover_solve)

    p = sub.add_parser("homology", help="torsion threshold decision")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(run=_run_homology)

    return parser


def _command_name(args) -> str:
    parts = [args.command]
    for attr in ("suite", "action"):
        value = getattr(args, attr, None)
        if value:
            parts.append(value)
    return " ".join(parts)


def run(argv=None) -> tuple[Report, int]:
    """Parse and execute; returns the report and the exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.run(args)
    except ValueError as err:
        report = Report(_command_name(args), {}, USAGE_ERROR, {"error": str(err)})
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report, _exit_code(report.status)


def main(argv=None) -> int:
    try:
        report, code = run(argv)
    except SystemExit as err:  # argparse: unknown flags exit with usage text
        return 2 if err.code not in (0, None) else 0
    if report.command == "doublecover table" and report.params.get("format") == "csv" \
            and report.status == VERIFIED:
        sys.stdout.write(_table_csv(report))
    else:
        print(report.to_json())
    out = report.params.get("out")
    if out and report.command == "doublecover solve":
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(report.to_json() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
