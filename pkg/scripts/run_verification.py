#!/usr/bin/env python3
"""Run the full check suite and write text and JSON reports to a directory."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from cauchyint import verify
from cauchyint.cli import render_text
from cauchyint.quadrature import Tolerance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--tol", type=float, default=1e-12)
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args()

    cfg = verify.VerifyConfig(tol=Tolerance(args.tol, args.tol), n_samples=args.samples)
    report = verify.run_all(cfg)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(render_text(report, timings=True))
    (out / "report.json").write_text(json.dumps(report.to_dict(timings=True), indent=2, allow_nan=False) + "\n")
    sys.stdout.write(render_text(report, timings=True))
    return 0 if report.all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
