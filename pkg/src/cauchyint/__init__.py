"""Numerical certification of

    int_0^1 arctan((arctanh x - arctan x) / (pi + arctanh x - arctan x)) dx / x
        = (pi/8) log(pi^2/8)

through its complex-analytic proof: the function f in three representations,
the auxiliary function G, quadrature on the quarter-disk contour, and one
residual check per step.
"""

from .complexfn import (
    FEval,
    RegionTag,
    SeriesConfig,
    G_eval,
    classify_region,
    f_eval,
    f_inner,
    f_logform,
    f_oracle_integral,
    f_outer,
    principal_log,
    real_integrand,
)
from .contour import ArcSeg, ContourSpec, LineSeg, Path, build_contour, integrate_path, semicircle_integral
from .quadrature import QuadResult, Tolerance, gk_adaptive, integrate_arc, integrate_line, tanh_sinh
from .verify import CLOSED_FORM, CheckResult, VerificationReport, VerifyConfig, run_all

__version__ = "0.1.0"
