"""Quantified residual checks, one per step of the contour-integration argument.

Every check returns a :class:`CheckResult` whose ``passed`` flag is exactly
``residual <= tolerance``. Checks that combine several sub-measurements with
different thresholds report the largest ratio ``measurement / threshold`` as
the residual against a tolerance of 1; the raw numbers are kept in ``details``.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .complexfn import (
    DELTA_SING,
    OUTER_CONSTANT,
    R_INNER,
    R_OUTER,
    G_eval,
    G_from_outer,
    RegionTag,
    classify_region,
    f_eval,
    f_inner,
    f_logform,
    f_oracle_integral,
    f_outer,
    log_integrand,
    principal_log,
    real_integrand,
    shifted_log_argument,
)
from .contour import ContourSpec, build_contour, integrate_path, semicircle_integral
from .errors import SpecError
from .quadrature import Tolerance, gk_adaptive, integrate_arc, tanh_sinh

CLOSED_FORM = math.pi / 8 * math.log(math.pi**2 / 8)
CLOSED_FORM_ALT = -math.pi / 4 * math.log(2 * math.sqrt(2) / math.pi)
ARC_CONSTANT = math.pi / 2 * math.log(2 * math.sqrt(2) / math.pi)

_ONE_PLUS_I = complex(1, 1)


@dataclass(frozen=True)
class VerifyConfig:
    R_values: tuple = (2.0, 5.0, 10.0)
    eps_values: tuple = (1e-2, 1e-3, 1e-4)
    tol: Tolerance = Tolerance()
    n_samples: int = 200
    seed: int = 42

    def __post_init__(self):
        object.__setattr__(self, "R_values", tuple(float(r) for r in self.R_values))
        object.__setattr__(self, "eps_values", tuple(float(e) for e in self.eps_values))
        if not self.R_values:
            raise SpecError("R_values must not be empty")
        if not self.eps_values:
            raise SpecError("eps_values must not be empty")
        if any(not r > 1 for r in self.R_values):
            raise SpecError(f"every R must exceed 1, got {self.R_values}")
        if any(not 0 < e < 1 for e in self.eps_values):
            raise SpecError(f"every eps must lie in (0, 1), got {self.eps_values}")
        if self.n_samples < 1:
            raise SpecError(f"n_samples must be >= 1, got {self.n_samples}")

    def to_dict(self) -> dict:
        return {
            "R_values": list(self.R_values),
            "eps_values": list(self.eps_values),
            "tol": {"abs_tol": self.tol.abs_tol, "rel_tol": self.tol.rel_tol},
            "n_samples": self.n_samples,
            "seed": self.seed,
        }


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    details: dict = field(default_factory=dict)
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "name": self.name,
            "residual": _jsonable(self.residual),
            "tolerance": self.tolerance,
            "passed": self.passed,
            "wall_time_ms": self.wall_time_ms if timings else 0.0,
            "details": _jsonable(self.details),
        }


@dataclass
class VerificationReport:
    checks: list
    config: VerifyConfig

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "config": self.config.to_dict(),
            "checks": [c.to_dict(timings) for c in self.checks],
            "all_passed": self.all_passed,
        }


def _jsonable(obj):
    if isinstance(obj, complex):
        return [_jsonable(obj.real), _jsonable(obj.imag)]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _ratio(value: float, threshold: float) -> float:
    return value / threshold


# -- sampling ---------------------------------------------------------------


def sample_disk(rng: random.Random, n: int, radius: float) -> list[complex]:
    return [cmath.rect(radius * math.sqrt(rng.random()), 2 * math.pi * rng.random()) for _ in range(n)]


def sample_quadrant_annulus(rng: random.Random, n: int, r0: float, r1: float) -> list[complex]:
    """Points in the open first quadrant with ``r0 <= |z| <= r1``."""
    out = []
    while len(out) < n:
        r = r0 + (r1 - r0) * rng.random()
        theta = (math.pi / 2) * rng.random()
        if theta > 0:
            out.append(cmath.rect(r, theta))
    return out


def sample_omega(rng: random.Random, n: int, r_max: float = 3.0, margin: float = 0.02) -> list[complex]:
    """Points of the cut plane at least ``margin`` away from the cuts and +-1, +-i."""
    out = []
    while len(out) < n:
        z = cmath.rect(r_max * math.sqrt(rng.random()), 2 * math.pi * rng.random())
        if classify_region(z) is RegionTag.Excluded:
            continue
        if abs(z) > 1 - margin:
            # distance to the nearest axis ray beyond the unit circle
            if min(abs(z.real), abs(z.imag)) < margin:
                continue
        if min(abs(z - s) for s in (1, -1, 1j, -1j)) < margin:
            continue
        out.append(z)
    return out


# -- checks -----------------------------------------------------------------


def check_wellposedness(cfg: VerifyConfig) -> CheckResult:
    xs = [0.999 * k / 100 for k in range(101)]
    fs = [f_eval(x).value.real for x in xs]
    negative = [x for x, fx in zip(xs, fs) if fx < 0]
    not_increasing = [xs[k] for k in range(100) if not fs[k] < fs[k + 1]]
    max_drop = max([0.0] + [fs[k] - fs[k + 1] for k in range(100)])

    ys = [(1 - 1e-10) * k / 1000 for k in range(1001)]
    vals = [real_integrand(y) for y in ys]
    over = [y for y, v in zip(ys, vals) if not abs(v) <= math.pi / 2]
    violations = len(negative) + len(not_increasing) + len(over)
    return CheckResult(
        "check_wellposedness",
        float(violations),
        0.5,
        {
            "negative_f_at": negative,
            "non_increasing_at": not_increasing,
            "max_decrease": max_drop,
            "min_f": min(fs),
            "integrand_over_bound_at": over,
            "integrand_at_0": vals[0],
            "integrand_at_1_minus_1e-10": vals[-1],
            "max_abs_integrand": max(abs(v) for v in vals),
        },
    )


def check_representation_agreement(cfg: VerifyConfig) -> CheckResult:
    rng = random.Random(cfg.seed)
    n = cfg.n_samples

    inner_pts = [0j] + sample_disk(rng, n, R_INNER)
    inner_max = inner_ratio = 0.0
    for z in inner_pts:
        a = f_inner(z).value
        d = abs(a - f_logform(z).value)
        inner_max = max(inner_max, d)
        inner_ratio = max(inner_ratio, _ratio(d, 1e-13 * (1 + abs(a))))

    outer_pts = sample_quadrant_annulus(rng, n, R_OUTER, 4.0)
    outer_max = outer_ratio = 0.0
    for z in outer_pts:
        a = f_outer(z).value
        d = abs(a - f_logform(z).value)
        outer_max = max(outer_max, d)
        outer_ratio = max(outer_ratio, _ratio(d, 1e-12 * (1 + abs(a))))

    oracle_tol = max(1e-10, 100 * cfg.tol.abs_tol)
    oracle_pts = [0j] + sample_omega(rng, max(1, n // 2))
    oracle_max = 0.0
    worst_oracle = 0j
    for z in oracle_pts:
        d = abs(f_eval(z).value - f_oracle_integral(z, cfg.tol))
        if d > oracle_max:
            oracle_max, worst_oracle = d, z

    residual = max(inner_ratio, outer_ratio, _ratio(oracle_max, oracle_tol))
    return CheckResult(
        "check_representation_agreement",
        residual,
        1.0,
        {
            "inner_vs_logform_max": inner_max,
            "outer_vs_logform_max": outer_max,
            "oracle_max": oracle_max,
            "oracle_worst_point": worst_oracle,
            "oracle_threshold": oracle_tol,
            "n_inner": len(inner_pts),
            "n_outer": len(outer_pts),
            "n_oracle": len(oracle_pts),
        },
    )


def check_im_log_reformulation(cfg: VerifyConfig) -> CheckResult:
    direct = tanh_sinh(real_integrand, cfg.tol)
    via_log = tanh_sinh(log_integrand, cfg.tol)
    integral_res = abs(direct.value.real - via_log.value.imag)

    ts = [0.0, 1.0] + [10 ** (-6 + 12 * k / 47) for k in range(48)]
    pointwise = max(
        abs(math.atan(t / (1 + t)) - principal_log(1 + _ONE_PLUS_I * t).imag) for t in ts
    )
    return CheckResult(
        "check_im_log_reformulation",
        max(integral_res, pointwise),
        50 * cfg.tol.abs_tol,
        {
            "direct": direct.value.real,
            "im_log": via_log.value.imag,
            "integral_residual": integral_res,
            "pointwise_max": pointwise,
            "n_pointwise": len(ts),
            "n_evals": direct.n_evals + via_log.n_evals,
        },
    )


def halfplane_samples(cfg: VerifyConfig) -> list[complex]:
    rng = random.Random(cfg.seed)
    n = cfg.n_samples
    pts = []
    while len(pts) < n:
        theta = (math.pi / 2) * rng.random()
        # alternate uniform and log-uniform radii so both scales are covered
        if len(pts) % 2:
            r = 50 * rng.random()
        else:
            r = 10 ** (-3 + math.log10(5e4) * rng.random())
        z = cmath.rect(r, theta)
        if z.real > 0 and z.imag > 0 and classify_region(z) is not RegionTag.Excluded:
            pts.append(z)
    return pts


def check_halfplane(cfg: VerifyConfig) -> CheckResult:
    pts = halfplane_samples(cfg)
    res = [shifted_log_argument(z).real for z in pts]
    bad = [z for z, v in zip(pts, res) if not v > 0]
    k = min(range(len(res)), key=res.__getitem__)
    near0 = cmath.rect(1e-3, math.pi / 4)
    far = cmath.rect(1e6, math.pi / 4)
    return CheckResult(
        "check_halfplane",
        float(len(bad)),
        0.5,
        {
            "n_samples": len(pts),
            "min_re": res[k],
            "argmin": pts[k],
            "nonpositive_at": bad,
            "re_near_0": shifted_log_argument(near0).real,
            "re_far_diagonal": shifted_log_argument(far).real,
        },
    )


def boundary_trace_extrapolation(x: float, deltas=(1e-6, 1e-7)) -> complex:
    """Limit of the log form at ``x + i delta`` as ``delta -> 0``, by linear extrapolation."""
    d1, d2 = deltas
    f1 = f_logform(complex(x, d1)).value
    f2 = f_logform(complex(x, d2)).value
    return (d1 * f2 - d2 * f1) / (d1 - d2)


def check_outer_series(cfg: VerifyConfig) -> CheckResult:
    rng = random.Random(cfg.seed + 1)
    pts = sample_quadrant_annulus(rng, cfg.n_samples, R_OUTER, 4.0)
    interior = max(abs(f_outer(z).value - f_logform(z).value) for z in pts)

    xs = [1.5 + 3.5 * k / 9 for k in range(10)]
    trace = max(abs(f_outer(x).value - boundary_trace_extrapolation(x)) for x in xs)

    far = abs(f_outer(cmath.rect(1e6, math.pi / 4)).value - OUTER_CONSTANT)
    residual = max(_ratio(interior, 1e-12), _ratio(trace, 1e-8), _ratio(far, 1e-6))
    return CheckResult(
        "check_outer_series",
        residual,
        1.0,
        {
            "interior_max": interior,
            "boundary_trace_max": trace,
            "far_field_deviation": far,
            "n_interior": len(pts),
            "trace_points": xs,
        },
    )


def rotation_samples(cfg: VerifyConfig) -> list[float]:
    rng = random.Random(cfg.seed + 2)
    xs = [0.5, 0.95]
    while len(xs) < max(cfg.n_samples // 2, 2):
        x = rng.random()
        if 0 < x < 1 - 10 * DELTA_SING:
            xs.append(x)
    return xs


def check_rotation_identity(cfg: VerifyConfig) -> CheckResult:
    xs = rotation_samples(cfg)
    devs = [abs(f_eval(1j * x).value + 1j * f_eval(x).value) for x in xs]
    k = max(range(len(devs)), key=devs.__getitem__)
    return CheckResult(
        "check_rotation_identity",
        devs[k],
        1e-14,
        {"n_samples": len(xs), "worst_x": xs[k], "at_0.5": devs[0], "at_0.95": devs[1]},
    )


def check_cauchy_zero(cfg: VerifyConfig) -> CheckResult:
    per = {}
    worst = 0.0
    for R in cfg.R_values:
        for eps in cfg.eps_values:
            if not eps < min(1.0, R - 1):
                continue
            path = build_contour(ContourSpec(R, eps))
            res = integrate_path(G_eval, path, cfg.tol)
            per[f"R={R:g},eps={eps:g}"] = {"abs": abs(res.value), "err_estimate": res.err_estimate}
            worst = max(worst, abs(res.value))
    self_test = abs(integrate_path(lambda z: z, build_contour(ContourSpec(10.0, 0.01)), cfg.tol).value)
    return CheckResult(
        "check_cauchy_zero",
        max(worst, self_test),
        50 * cfg.tol.abs_tol,
        {"per_contour": per, "entire_function_self_test": self_test},
    )


SEMICIRCLE_RATIO = 0.5
SEMICIRCLE_MAX_SMALLEST = 1e-2


def check_semicircle_decay(cfg: VerifyConfig) -> CheckResult:
    eps = list(cfg.eps_values)
    if len(eps) < 3 or any(not a > b for a, b in zip(eps, eps[1:])):
        raise SpecError(f"need at least 3 strictly decreasing eps values, got {eps}")
    moduli = {}
    worst_ratio = 0.0
    smallest = 0.0
    for which in ("at_1", "at_i"):
        mods = [abs(semicircle_integral(which, e, cfg.tol).value) for e in eps]
        moduli[which] = mods
        worst_ratio = max(worst_ratio, max(b / a for a, b in zip(mods, mods[1:])))
        smallest = max(smallest, mods[-1])
    # both conditions folded into one number: ratio bound and smallest modulus bound
    residual = max(worst_ratio, smallest * SEMICIRCLE_RATIO / SEMICIRCLE_MAX_SMALLEST)
    bound = {
        which: [m / (e * (1 + math.log(math.log(4 / e)))) for m, e in zip(mods, eps)]
        for which, mods in moduli.items()
    }
    return CheckResult(
        "check_semicircle_decay",
        residual,
        SEMICIRCLE_RATIO,
        {
            "eps": eps,
            "moduli": moduli,
            "max_successive_ratio": worst_ratio,
            "smallest_modulus": smallest,
            "modulus_over_eps_loglog": bound,
        },
    )


def radial_integrand(x: float) -> complex:
    return G_eval(complex(x, 0)) - 1j * G_eval(complex(0, x))


def _radial_integrand_outer(x: float) -> complex:
    return G_from_outer(complex(x, 0)) - 1j * G_from_outer(complex(0, x))


def radial_integral(R: float, tol: Tolerance) -> tuple[complex, complex]:
    """``integral_1^R (G(x) - i G(ix)) dx`` split at ``1 + DELTA_SING``.

    The sliver next to the ramification point is integrated with the outer
    expansion, which stays valid arbitrarily close to 1 and i.
    """
    start = 1 + DELTA_SING
    main = gk_adaptive(radial_integrand, start, R, tol).value
    sliver = gk_adaptive(_radial_integrand_outer, 1.0, start, tol).value
    return main, sliver


def check_radial_identity(cfg: VerifyConfig) -> CheckResult:
    integral_tol = max(1e-10, 100 * cfg.tol.abs_tol)
    per = {}
    integral_res = 0.0
    for R in cfg.R_values:
        main, sliver = radial_integral(R, cfg.tol)
        total = main + sliver
        exact = math.pi / 2 * math.log(R)
        re_dev = abs(total.real)
        im_dev = abs(total.imag - exact)
        per[f"R={R:g}"] = {"real_part": re_dev, "imag_dev": im_dev, "sliver": sliver, "total": total}
        integral_res = max(integral_res, abs(total - 1j * exact))

    xs = [2.0, 3.0, 5.0] + [1 + 9 * k / 16 for k in range(1, 17)]
    re_point = max(abs(radial_integrand(x).real) for x in xs)
    im_point = max(abs(radial_integrand(x).imag - math.pi / (2 * x)) for x in xs)
    residual = max(_ratio(integral_res, integral_tol), _ratio(re_point, 1e-13), _ratio(im_point, 1e-13))
    return CheckResult(
        "check_radial_identity",
        residual,
        1.0,
        {
            "per_R": per,
            "integral_max": integral_res,
            "integral_threshold": integral_tol,
            "pointwise_real_max": re_point,
            "pointwise_imag_max": im_point,
        },
    )


def arc_residual(R: float, tol: Tolerance) -> float:
    # i * int_0^{pi/2} log(1 + (1+i) f(R e^{ix})) dx is the quarter-circle integral of G
    arc = integrate_arc(G_eval, 0j, R, 0.0, math.pi / 2, tol).value
    return abs(arc + 0.5j * math.pi * math.log(R) - 1j * ARC_CONSTANT)


def check_arc_asymptotic(cfg: VerifyConfig) -> CheckResult:
    floor = 50 * cfg.tol.abs_tol
    per = {}
    worst = 0.0
    for R in cfg.R_values:
        res = arc_residual(R, cfg.tol)
        threshold = max(floor, R**-4)
        per[f"R={R:g}"] = {"residual": res, "threshold": threshold, "below_floor": res <= floor}
        worst = max(worst, res / threshold)
    return CheckResult(
        "check_arc_asymptotic",
        worst,
        1.0,
        {
            "per_R": per,
            "arc_constant": ARC_CONSTANT,
            "exact_identity_supported": all(v["below_floor"] for v in per.values()),
        },
    )


def check_final_value(cfg: VerifyConfig) -> CheckResult:
    res = tanh_sinh(real_integrand, cfg.tol)
    diff = abs(res.value.real - CLOSED_FORM)
    constants = abs(CLOSED_FORM - CLOSED_FORM_ALT)
    return CheckResult(
        "check_final_value",
        max(diff, constants),
        cfg.tol.abs_tol,
        {
            "integral": res.value.real,
            "closed_form": CLOSED_FORM,
            "closed_form_alt": CLOSED_FORM_ALT,
            "quadrature_diff": diff,
            "closed_forms_diff": constants,
            "n_evals": res.n_evals,
        },
    )


CHECKS: dict[str, Callable[[VerifyConfig], CheckResult]] = {
    fn.__name__: fn
    for fn in (
        check_wellposedness,
        check_representation_agreement,
        check_im_log_reformulation,
        check_halfplane,
        check_outer_series,
        check_rotation_identity,
        check_cauchy_zero,
        check_semicircle_decay,
        check_radial_identity,
        check_arc_asymptotic,
        check_final_value,
    )
}


def run_check(name: str, cfg: VerifyConfig) -> CheckResult:
    """Run one check; an exception becomes a failed result carrying the error text."""
    fn = CHECKS[name]
    t0 = time.perf_counter()
    try:
        result = fn(cfg)
    except Exception as exc:  # a failing check must not abort the suite
        result = CheckResult(name, math.inf, 1.0, {"error": f"{type(exc).__name__}: {exc}"})
    result.wall_time_ms = 1000 * (time.perf_counter() - t0)
    return result


def run_all(cfg: VerifyConfig = VerifyConfig(), names=None) -> VerificationReport:
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise SpecError(f"unknown checks: {unknown}")
    ordered = [n for n in CHECKS if n in set(names)]
    return VerificationReport([run_check(n, cfg) for n in ordered], cfg)
