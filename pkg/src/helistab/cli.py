"""Command-line front end.

Subcommands: ``classify`` (single point), ``region`` (grid sweep), ``curve``
(marginal-curve tracing), ``eig`` (eigensolves with optional two-dimensional
cross-check) and ``validate`` (external marginal data against the computed
eigenvalue).  Sweep outputs are plot-ready CSV, or JSON mirroring the CSV
fields one-to-one.  Exit codes: 0 success, 1 runtime or I/O failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from . import analytic, oracle2d, stability
from .eigen1d import k_sweep, lambda_hat
from .errors import HelistabError, IngestionError
from .geometry import FilmParams

REGION_HEADER = ["rho", "theta", "lambda_hat", "lambda_bar", "lambda1", "status", "method"]
CURVE_HEADER = ["theta", "rho_star", "residual"]
VALIDATE_HEADER = ["rho", "theta", "err_rho", "err_theta", "source"]

_NA = "NA"


@dataclass(frozen=True)
class RunConfig:
    """Resolved run-wide options of one CLI invocation."""

    nodes: int = 2001
    oracle_ny: int = 81
    oracle_nz: int = 81
    tol: float = 1e-6
    k_check: int = 4
    fmt: str = "csv"
    out: str | None = None

    def classify_cfg(self, method: str = "both") -> stability.ClassifyConfig:
        return stability.ClassifyConfig(
            nodes=self.nodes, tol=self.tol, k_check=self.k_check, method=method
        )


def _fmt(value) -> str:
    return _NA if value is None else repr(float(value))


def _check_positive(args, name: str) -> str | None:
    value = getattr(args, name.replace("-", "_"))
    if value is None or value <= 0:
        return f"--{name} must be positive, got {value!r}"
    return None


def _verdict_row(rho: float, theta: float, cell_error: str | None, verdict) -> dict:
    if verdict is None:
        return {
            "rho": rho,
            "theta": theta,
            "lambda_hat": None,
            "lambda_bar": None,
            "lambda1": None,
            "status": "Error",
            "method": "none",
        }
    return {
        "rho": rho,
        "theta": theta,
        "lambda_hat": verdict.lambda_hat,
        "lambda_bar": verdict.lambda_bar,
        "lambda1": verdict.lambda1,
        "status": verdict.status.value,
        "method": verdict.method.value if verdict.method is not None else "none",
    }


def _write_rows(path: str, header: list[str], rows: list[dict], fmt: str) -> None:
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [
                    _fmt(row[col]) if isinstance(row[col], (int, float)) or row[col] is None
                    else str(row[col])
                    for col in header
                ]
            )


def cmd_classify(args) -> int:
    for name in ("rho",):
        msg = _check_positive(args, name)
        if msg:
            print(f"error: {msg}", file=sys.stderr)
            return 2
    if args.theta < 0:
        print(f"error: --theta must be nonnegative, got {args.theta!r}", file=sys.stderr)
        return 2
    cfg = RunConfig(nodes=args.nodes, tol=args.tol).classify_cfg(method=args.method)
    verdict = stability.classify(FilmParams(args.rho, args.theta), cfg)
    if args.json:
        payload = {
            "rho": args.rho,
            "theta": args.theta,
            "status": verdict.status.value,
            "method": verdict.method.value if verdict.method is not None else None,
            "lambda_hat": verdict.lambda_hat,
            "lambda_bar": verdict.lambda_bar,
            "lambda1": verdict.lambda1,
            "margin": verdict.margin,
        }
        print(json.dumps(payload))
    else:
        print(f"rho={_fmt(args.rho)} theta={_fmt(args.theta)}")
        print(f"status={verdict.status.value}")
        print(f"method={verdict.method.value if verdict.method is not None else 'none'}")
        print(f"lambda_hat={_fmt(verdict.lambda_hat)}")
        print(f"lambda_bar={_fmt(verdict.lambda_bar)}")
        print(f"lambda1={_fmt(verdict.lambda1)}")
        print(f"margin={_fmt(verdict.margin)}")
    return 0


def cmd_region(args) -> int:
    for name in ("rho-min", "rho-max"):
        msg = _check_positive(args, name)
        if msg:
            print(f"error: {msg}", file=sys.stderr)
            return 2
    if args.theta_min < 0:
        print(f"error: --theta-min must be nonnegative, got {args.theta_min!r}", file=sys.stderr)
        return 2
    if args.rho_steps < 2 or args.theta_steps < 2:
        print("error: --rho-steps and --theta-steps must both be >= 2", file=sys.stderr)
        return 2
    cfg = RunConfig(nodes=args.nodes, tol=args.tol, fmt=args.format, out=args.out)
    rmap = stability.region_map(
        args.rho_min,
        args.rho_max,
        args.theta_min,
        args.theta_max,
        args.rho_steps,
        args.theta_steps,
        cfg.classify_cfg(method=args.method),
    )
    rows = [_verdict_row(c.rho, c.theta, c.error, c.verdict) for c in rmap.cells]
    _write_rows(args.out, REGION_HEADER, rows, args.format)
    n_err = sum(1 for c in rmap.cells if c.error is not None)
    print(f"wrote {len(rows)} cells to {args.out} ({n_err} cell errors)")
    return 0


def cmd_curve(args) -> int:
    if args.theta_min < 0:
        print(f"error: --theta-min must be nonnegative, got {args.theta_min!r}", file=sys.stderr)
        return 2
    if args.steps < 1:
        print(f"error: --steps must be >= 1, got {args.steps!r}", file=sys.stderr)
        return 2
    cfg = RunConfig(nodes=args.nodes, tol=args.tol, fmt=args.format, out=args.out)
    curve = stability.trace_boundary(
        args.theta_min, args.theta_max, args.steps, cfg.classify_cfg()
    )
    rows = [
        {"theta": s.theta, "rho_star": s.rho_star, "residual": s.residual}
        for s in curve.samples
    ]
    _write_rows(args.out, CURVE_HEADER, rows, args.format)
    n_found = sum(1 for s in curve.samples if s.rho_star is not None)
    print(f"wrote {len(rows)} samples to {args.out} ({n_found} crossings found)")
    if curve.monotone_nonincreasing is not None:
        print(f"traced curve nonincreasing in theta: {curve.monotone_nonincreasing}")
    return 0


def cmd_eig(args) -> int:
    msg = _check_positive(args, "rho")
    if msg:
        print(f"error: {msg}", file=sys.stderr)
        return 2
    if args.theta < 0:
        print(f"error: --theta must be nonnegative, got {args.theta!r}", file=sys.stderr)
        return 2
    if args.k < 1:
        print(f"error: --k must be >= 1, got {args.k!r}", file=sys.stderr)
        return 2
    params = FilmParams(args.rho, args.theta)
    sols = k_sweep(params, n=args.nodes, kmax=args.k)
    for sol in sols:
        print(f"k={sol.k} lambda={_fmt(sol.lam)} residual={sol.residual:.3e}")
    if args.oracle_2d is not None:
        ny, nz = args.oracle_2d
        if ny < 4 or nz < 4:
            print(f"error: --oracle-2d grid must be at least 4 4, got {ny} {nz}", file=sys.stderr)
            return 2
        system = oracle2d.assemble2d(params, ny, nz)
        sol2d = oracle2d.smallest_eigenvalue_2d(system)
        print(f"lambda_2d={_fmt(sol2d.lam)} grid={ny}x{nz}")
        print(f"discrepancy={abs(sol2d.lam - sols[0].lam):.6e}")
    return 0


def _parse_points(path: str) -> list[stability.ValidationPoint]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        lines = list(reader)
    if not lines or [cell.strip() for cell in lines[0]] != VALIDATE_HEADER:
        raise IngestionError(
            f"first line must be the header {','.join(VALIDATE_HEADER)!r}", lines=[1]
        )
    points = []
    bad: list[int] = []
    for lineno, row in enumerate(lines[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 5:
            bad.append(lineno)
            continue
        try:
            points.append(
                stability.ValidationPoint(
                    rho=float(row[0]),
                    theta=float(row[1]),
                    err_rho=float(row[2]),
                    err_theta=float(row[3]),
                    source=row[4].strip(),
                )
            )
        except (ValueError, HelistabError):
            bad.append(lineno)
    if bad:
        raise IngestionError(f"malformed rows at lines {bad}", lines=bad)
    return points


def cmd_validate(args) -> int:
    if args.band <= 0:
        print(f"error: --band must be positive, got {args.band!r}", file=sys.stderr)
        return 2
    points = _parse_points(args.points)
    cfg = RunConfig(nodes=args.nodes).classify_cfg()
    report = stability.validate(points, cfg, band=args.band)
    for check in report.checks:
        pt = check.point
        outcome = "PASS" if check.consistent else "FAIL"
        print(
            f"rho={_fmt(pt.rho)} theta={_fmt(pt.theta)} "
            f"err_rho={_fmt(pt.err_rho)} err_theta={_fmt(pt.err_theta)} "
            f"source={pt.source} lambda_hat={_fmt(check.lambda_hat)} "
            f"min_dev={check.min_abs_dev:.6e} -> {outcome}"
        )
    print(f"summary: {report.n_pass} consistent, {report.n_fail} inconsistent of {len(report.checks)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helistab",
        description="Linear stability of helical films confined to a circular cylinder.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a single (rho, theta) point")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--method", choices=["analytic", "numeric", "both"], default="both")
    p.add_argument("--nodes", type=int, default=2001)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("region", help="sweep a (rho, theta) grid and write the verdicts")
    p.add_argument("--rho-min", type=float, required=True)
    p.add_argument("--rho-max", type=float, required=True)
    p.add_argument("--theta-min", type=float, required=True)
    p.add_argument("--theta-max", type=float, required=True)
    p.add_argument("--rho-steps", type=int, required=True)
    p.add_argument("--theta-steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", choices=["analytic", "numeric", "both"], default="both")
    p.add_argument("--nodes", type=int, default=2001)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("curve", help="trace the marginal-stability curve rho*(theta)")
    p.add_argument("--theta-min", type=float, required=True)
    p.add_argument("--theta-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--nodes", type=int, default=2001)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("eig", help="solve the reduced eigenproblem, optionally cross-checked in 2D")
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--k", type=int, default=1, help="print modes 1..K")
    p.add_argument("--nodes", type=int, default=2001)
    p.add_argument("--oracle-2d", type=int, nargs=2, metavar=("NY", "NZ"))
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("validate", help="check external marginal points against the eigenvalue")
    p.add_argument("--points", required=True, help="CSV with header rho,theta,err_rho,err_theta,source")
    p.add_argument("--band", type=float, default=0.05)
    p.add_argument("--nodes", type=int, default=2001)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except IngestionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except HelistabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
