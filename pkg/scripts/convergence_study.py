#!/usr/bin/env python3
"""Convergence tables: tanh-sinh level differences for the headline integral,
detour-integral decay in eps, and quarter-arc residual against R."""

from __future__ import annotations

import math

from cauchyint.complexfn import real_integrand
from cauchyint.contour import semicircle_integral
from cauchyint.quadrature import Tolerance, tanh_sinh
from cauchyint.verify import CLOSED_FORM, arc_residual


def main() -> None:
    res = tanh_sinh(real_integrand, Tolerance(1e-15, 1e-15))
    print("tanh-sinh on (0, 1): successive level differences")
    for k, d in enumerate(res.level_diffs):
        print(f"  level {k + 1:2d}  {d:.3e}")
    print(f"  value {res.value.real!r}  diff {res.value.real - CLOSED_FORM:+.2e}  evals {res.n_evals}")

    print("\ndetour integrals |int G| and |int G| / (eps (1 + loglog(4/eps)))")
    for eps in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
        scale = eps * (1 + math.log(math.log(4 / eps)))
        row = [abs(semicircle_integral(w, eps).value) for w in ("at_1", "at_i")]
        print(f"  eps={eps:.0e}  at_1 {row[0]:.3e} ({row[0] / scale:.3f})  at_i {row[1]:.3e} ({row[1] / scale:.3f})")

    print("\nquarter-arc residual against R^-4")
    for R in (1.5, 2.0, 5.0, 10.0, 100.0):
        r = arc_residual(R, Tolerance())
        print(f"  R={R:6g}  residual {r:.3e}  R^-4 {R**-4:.3e}")


if __name__ == "__main__":
    main()
