"""Command line front end: single-d analysis, bulk scans, golden regression.

Exit codes: 0 success, 1 regression failure, 2 invalid d, 3 precision or
integrality error.  Scan output is byte-identical for any worker count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import sys
from dataclasses import dataclass

from .criteria import CaseTag, LambdaReport, Verdict, analyze, classify
from .errors import IntegralityError, PrecisionError
from .padic3 import DEFAULT_PRECISION, cube_residues_mod_pi9, identity_vector_checks


@dataclass(frozen=True)
class ScanConfig:
    d_min: int
    d_max: int
    case: str = "both"
    precision: int = DEFAULT_PRECISION
    fmt: str = "csv"
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.d_min > self.d_max:
            raise ValueError("d_min must not exceed d_max")
        if self.case not in ("split", "inert", "both"):
            raise ValueError(f"unknown case filter {self.case!r}")
        if self.precision < 8:
            raise ValueError("precision must be at least 8")
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

SCAN_COLUMNS = [
    "d",
    "case",
    "h_minus",
    "h_plus",
    "r3",
    "log_eps_ratio_mod9",
    "log_alpha_mod9",
    "lambda_lower_bound",
    "lambda_ge2",
    "consistency_ok",
    "error",
]

GOLDEN_CASES = {
    31: {"case": "inert", "h_plus": 1, "h_minus": 3, "log_eps_ratio_mod9": 6, "lambda_ge2": "no"},
    211: {"case": "inert", "h_plus": 1, "h_minus": 3, "log_eps_ratio_mod9": 3, "lambda_ge2": "yes"},
    244: {"case": "inert", "h_plus": 2, "h_minus": 6, "log_eps_ratio_mod9": 0, "lambda_ge2": "no"},
    35: {
        "case": "split",
        "h_plus": 2,
        "h_minus": 2,
        "alpha": "(1+sqrt(-35))/2",
        "log_alpha_mod9": 0,
        "lambda_ge2": "yes",
        "alpha_is_cube": False,
    },
    107: {
        "case": "split",
        "h_plus": 3,
        "h_minus": 3,
        "alpha": "(1+sqrt(-107))/2",
        "log_alpha_mod9": 0,
        "lambda_ge2": "yes",
        "alpha_is_cube": False,
    },
}


def _report_row(d: int, prec: int) -> dict:
    row = {c: None for c in SCAN_COLUMNS}
    row["d"] = d
    try:
        rep = analyze(d, prec)
    except (PrecisionError, IntegralityError) as e:
        row["case"] = classify(d).value
        row["error"] = str(e)
        return row
    row["case"] = rep.case.value
    row["h_minus"] = rep.h_minus
    row["h_plus"] = rep.h_plus
    row["r3"] = rep.r3
    row["log_eps_ratio_mod9"] = rep.log_eps_ratio_mod9
    row["log_alpha_mod9"] = rep.log_alpha_mod9
    row["lambda_lower_bound"] = rep.lambda_lower_bound
    row["lambda_ge2"] = rep.lambda_ge2.value
    row["consistency_ok"] = rep.consistency_ok
    row["error"] = ""
    return row


def _scan_worker(task: tuple[int, int]) -> dict:
    d, prec = task
    return _report_row(d, prec)


def _format_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_scan_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for row in rows:
        w.writerow([_format_cell(row[c]) for c in SCAN_COLUMNS])
    return buf.getvalue()


def render_scan_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def cmd_analyze(args) -> int:
    tag = classify(args.d)
    if tag is CaseTag.INVALID:
        reason = "3 divides d" if args.d > 0 and args.d % 3 == 0 else "d must be a positive integer"
        print(f"invalid d={args.d}: {reason}", file=sys.stderr)
        return 2
    try:
        rep = analyze(args.d, args.precision)
    except (PrecisionError, IntegralityError) as e:
        print(f"analysis failed for d={args.d}: {e}", file=sys.stderr)
        return 3
    if args.format == "json":
        print(json.dumps(rep.to_dict(), indent=2))
        return 0
    print(_render_report_text(rep))
    return 0


def _render_report_text(rep: LambdaReport) -> str:
    lines = [
        f"d = {rep.d_raw} (canonical core {rep.d}), case: {rep.case.value}",
        f"h- = {rep.h_minus}   h+ = {rep.h_plus}   3-rank of Cl(K0) = {rep.r3}",
        f"eps0 = {rep.eps0.render()}",
        f"(log3 eps0)/sqrt(D) mod 9 = {rep.log_eps_ratio_mod9}",
    ]
    if rep.alpha is not None:
        cube = "yes" if rep.alpha_is_cube else "no"
        lines.append(
            f"alpha = {rep.alpha.render()}   log3(alpha) mod 9 = {rep.log_alpha_mod9}   cube: {cube}"
        )
        lines.append(
            "eps0 Kummer witness (cube mod pi^9): "
            + ("yes" if rep.eps0_kummer_unramified else "no")
        )
    lines.append("criteria:")
    for cid, verdict in rep.criteria_detail:
        lines.append(f"  {cid}: {verdict}")
    lines.append(f"lambda lower bound: {rep.lambda_lower_bound}")
    lines.append(f"lambda >= 2: {rep.lambda_ge2.value}")
    lines.append("consistency: " + ("ok" if rep.consistency_ok else "VIOLATED"))
    return "\n".join(lines)


def scan_rows(
    d_min: int, d_max: int, case: str = "both", precision: int = DEFAULT_PRECISION, jobs: int = 1
) -> list[dict]:
    wanted = [
        d
        for d in range(d_min, d_max + 1)
        if classify(d) is not CaseTag.INVALID
        and (case == "both" or classify(d).value == case)
    ]
    tasks = [(d, precision) for d in wanted]
    if jobs > 1 and len(tasks) > 1:
        cube_residues_mod_pi9()  # build once; workers inherit via fork
        with multiprocessing.Pool(jobs) as pool:
            rows = list(pool.imap(_scan_worker, tasks, chunksize=16))
    else:
        rows = [_scan_worker(t) for t in tasks]
    return rows


def _write_scan(text: str, out: str | None) -> int:
    if out:
        try:
            with open(out, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            print(f"cannot write {out}: {e}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def run_scan(config: ScanConfig) -> int:
    rows = scan_rows(config.d_min, config.d_max, config.case, config.precision, config.jobs)
    text = render_scan_csv(rows) if config.fmt == "csv" else render_scan_json(rows)
    return _write_scan(text, config.out)


def cmd_scan(args) -> int:
    if args.min > args.max:
        # an empty effective range is not an error: emit a header-only table
        print("empty range: --min exceeds --max", file=sys.stderr)
        text = render_scan_csv([]) if args.format == "csv" else render_scan_json([])
        return _write_scan(text, args.out)
    config = ScanConfig(args.min, args.max, args.case, args.precision, args.format,
                        args.out, args.jobs)
    return run_scan(config)


def cmd_paper_check(args) -> int:
    failures = []
    for d, expected in GOLDEN_CASES.items():
        bad = {}
        try:
            rep = analyze(d, args.precision)
            got = rep.to_dict()
            bad = {k: (v, got[k]) for k, v in expected.items() if got[k] != v}
            if not rep.consistency_ok:
                bad["consistency_ok"] = (True, False)
        except Exception as e:  # a broken invariant shows as FAIL, not a crash
            bad = {"exception": (None, f"{type(e).__name__}: {e}")}
        status = "PASS" if not bad else "FAIL"
        print(f"golden d={d}: {status}")
        if bad:
            for k, (want, have) in bad.items():
                print(f"    {k}: expected {want!r}, computed {have!r}")
            failures.append(d)
    for name, ok in identity_vector_checks():
        print(f"identity {name}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            failures.append(name)
    if failures:
        print(f"{len(failures)} check(s) failed")
        return 1
    print("all checks passed")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="iwasawa3",
        description="criteria for lambda >= 2 in the cyclotomic Z3-extension of Q(sqrt(-d))",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="full report for a single d")
    pa.add_argument("--d", type=int, required=True)
    pa.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    pa.add_argument("--format", choices=["text", "json"], default="text")
    pa.set_defaults(func=cmd_analyze)

    ps = sub.add_parser("scan", help="bulk range scan")
    ps.add_argument("--min", type=int, required=True)
    ps.add_argument("--max", type=int, required=True)
    ps.add_argument("--case", choices=["split", "inert", "both"], default="both")
    ps.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    ps.add_argument("--format", choices=["csv", "json"], default="csv")
    ps.add_argument("--out", default=None)
    ps.add_argument("--jobs", type=int, default=1)
    ps.set_defaults(func=cmd_scan)

    pp = sub.add_parser("paper-check", help="golden regression suite")
    pp.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    pp.set_defaults(func=cmd_paper_check)

    args = ap.parse_args(argv)
    if getattr(args, "precision", DEFAULT_PRECISION) < 8:
        ap.error("--precision must be at least 8")
    if getattr(args, "jobs", 1) < 1:
        ap.error("--jobs must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
