"""Command-line front end: ``verify``, ``integral`` and ``sample``.

Exit codes: 0 on success, 1 when a check or computation fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import verify
from .complexfn import G_eval, classify_region, f_eval, log_integrand, real_integrand
from .errors import CauchyIntError, PreconditionError, SpecError
from .quadrature import Tolerance, tanh_sinh

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

CSV_COLUMNS = ("re", "im", "value_re", "value_im", "method", "trunc_bound", "error")


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchyint",
        description="Numerical certification of the arctan/arctanh integral identity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the residual checks and report")
    p.add_argument("--check", action="append", choices=list(verify.CHECKS), metavar="NAME",
                   help="run only this check (repeatable)")
    p.add_argument("--radius", action="append", type=float, metavar="R", help="outer radius (repeatable)")
    p.add_argument("--epsilon", action="append", type=float, metavar="E", help="detour radius (repeatable)")
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--timings", action="store_true",
                   help="include measured wall times (makes output non-reproducible)")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("integral", help="compute the integral on (0, 1)")
    p.add_argument("--method", choices=("direct", "complex"), default="direct")
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_integral)

    p = sub.add_parser("sample", help="evaluate f, G or the integrand on a grid, as CSV")
    p.add_argument("--function", choices=("f", "G", "integrand"), required=True)
    p.add_argument("--grid", required=True, metavar="SPEC",
                   help="start:stop:count (real) or re0:re1:im0:im1:n (complex n x n)")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_sample)
    return parser


def _write(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


# -- verify -----------------------------------------------------------------


def render_text(report: verify.VerificationReport, timings: bool) -> str:
    lines = []
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        line = f"{status}  {c.name:34s} residual={c.residual:.3e}  tolerance={c.tolerance:.3e}"
        if timings:
            line += f"  ({c.wall_time_ms:.1f} ms)"
        lines.append(line)
        if "error" in c.details:
            lines.append(f"      error: {c.details['error']}")
    lines.append(f"all_passed: {str(report.all_passed).lower()}")
    return "\n".join(lines) + "\n"


def render_json(report: verify.VerificationReport, timings: bool) -> str:
    return json.dumps(report.to_dict(timings), indent=2, allow_nan=False) + "\n"


def render_csv(report: verify.VerificationReport, timings: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "residual", "tolerance", "passed", "wall_time_ms"])
    for c in report.checks:
        w.writerow([c.name, _fmt(c.residual), _fmt(c.tolerance), str(c.passed).lower(),
                    _fmt(c.wall_time_ms if timings else 0.0)])
    return buf.getvalue()


RENDERERS = {"text": render_text, "json": render_json, "csv": render_csv}


def cmd_verify(args) -> int:
    kwargs = {"tol": Tolerance(args.tol, args.tol), "n_samples": args.samples, "seed": args.seed}
    if args.radius:
        kwargs["R_values"] = args.radius
    if args.epsilon:
        kwargs["eps_values"] = args.epsilon
    try:
        cfg = verify.VerifyConfig(**kwargs)
    except SpecError as exc:
        raise UsageError(str(exc))
    report = verify.run_all(cfg, args.check)
    _write(RENDERERS[args.format](report, args.timings), args.out)
    return EXIT_OK if report.all_passed else EXIT_FAIL


# -- integral ---------------------------------------------------------------


def compute_integral(method: str, tol: Tolerance):
    if method == "direct":
        res = tanh_sinh(real_integrand, tol)
        return res.value.real, res
    res = tanh_sinh(log_integrand, tol)
    return res.value.imag, res


def cmd_integral(args) -> int:
    tol = Tolerance(args.tol, args.tol)
    try:
        value, res = compute_integral(args.method, tol)
    except CauchyIntError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    diff = value - verify.CLOSED_FORM
    ok = abs(diff) <= args.tol
    if args.format == "json":
        payload = {
            "method": args.method,
            "value": value,
            "closed_form": verify.CLOSED_FORM,
            "diff": diff,
            "err_estimate": res.err_estimate,
            "n_evals": res.n_evals,
            "tol": args.tol,
            "passed": ok,
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = (
            f"method       {args.method}\n"
            f"value        {value!r}\n"
            f"closed_form  {verify.CLOSED_FORM!r}\n"
            f"diff         {diff!r}\n"
            f"err_estimate {res.err_estimate!r}\n"
            f"n_evals      {res.n_evals}\n"
        )
    _write(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- sample -----------------------------------------------------------------


def _linspace(a: float, b: float, n: int) -> list[float]:
    if n == 1:
        return [a]
    return [a + (b - a) * k / (n - 1) for k in range(n)]


def parse_grid(spec: str) -> list[complex]:
    parts = spec.split(":")
    try:
        if len(parts) == 3:
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise ValueError
            return [complex(x, 0.0) for x in _linspace(a, b, n)]
        if len(parts) == 5:
            r0, r1, i0, i1 = (float(p) for p in parts[:4])
            n = int(parts[4])
            if n < 1:
                raise ValueError
            return [complex(x, y) for y in _linspace(i0, i1, n) for x in _linspace(r0, r1, n)]
    except ValueError:
        pass
    raise UsageError(f"cannot parse grid {spec!r}; expected start:stop:count or re0:re1:im0:im1:n")


def sample_row(function: str, z: complex) -> dict:
    row = {"re": z.real, "im": z.imag, "value_re": None, "value_im": None,
           "method": "", "trunc_bound": None, "error": ""}
    try:
        if function == "f":
            fe = f_eval(z)
            row.update(value_re=fe.value.real, value_im=fe.value.imag,
                       method=fe.method.name, trunc_bound=fe.trunc_bound)
        elif function == "G":
            v = G_eval(z)
            row.update(value_re=v.real, value_im=v.imag, method=classify_region(z).name)
        else:
            if z.imag != 0:
                raise PreconditionError("the integrand is defined on the real segment [0, 1) only")
            v = real_integrand(z.real)
            row.update(value_re=v, value_im=0.0)
    except (CauchyIntError, ArithmeticError) as exc:
        row.update(method=classify_region(z).name, error=f"{type(exc).__name__}: {exc}")
    return row


def cmd_sample(args) -> int:
    points = parse_grid(args.grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for z in points:
        row = sample_row(args.function, z)
        w.writerow([_fmt(row[c]) if c in ("re", "im", "value_re", "value_im", "trunc_bound") else row[c]
                    for c in CSV_COLUMNS])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
