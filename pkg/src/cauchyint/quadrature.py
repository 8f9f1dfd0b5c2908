"""Adaptive quadrature for complex-valued integrands.

``gk_adaptive`` is a globally adaptive Gauss-Kronrod (7, 15) scheme for smooth
integrands on a finite interval. ``tanh_sinh`` handles integrands on ``(0, 1)``
with mild endpoint singularities; its nodes never touch the endpoints.
``integrate_line`` and ``integrate_arc`` wrap ``gk_adaptive`` for the two kinds
of path pieces in the complex plane.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import EvaluationError, PreconditionError, QuadratureError

ComplexFn = Callable[[complex], complex]
RealFn = Callable[[float], complex]

MAX_DEPTH = 40
MAX_INTERVALS = 4000
TS_MAX_LEVEL = 12
TS_MIN_LEVEL = 3
TS_T_MAX = 6.0

_EPS = 2.220446049250313e-16

# Kronrod abscissae on [0, 1] (symmetric), odd indices are the Gauss points.
_XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise PreconditionError(f"tolerances must be positive, got {self}")

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def split(self, parts: int) -> "Tolerance":
        return Tolerance(self.abs_tol / parts, self.rel_tol / parts)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_estimate: float
    n_evals: int
    # tanh-sinh only: |I_k - I_(k-1)| for each refinement level k >= 1
    level_diffs: tuple = field(default=(), compare=False)


def _checked(fn, x):
    y = complex(fn(x))
    if not (math.isfinite(y.real) and math.isfinite(y.imag)):
        raise EvaluationError(f"integrand returned {y!r} at {x!r}")
    return y


def _fsum_complex(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def gk15(fn: RealFn, a: float, b: float) -> tuple[complex, float, float]:
    """One Gauss-Kronrod (7, 15) panel: Kronrod value, |K - G| estimate, |f| integral."""
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fc = _checked(fn, center)
    res_k = fc * _WGK[7]
    res_g = fc * _WG[3]
    res_abs = abs(fc) * _WGK[7]
    for j in range(7):
        dx = half * _XGK[j]
        f1 = _checked(fn, center - dx)
        f2 = _checked(fn, center + dx)
        s = f1 + f2
        res_k += _WGK[j] * s
        res_abs += _WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            res_g += _WG[j // 2] * s
    value = res_k * half
    err = abs((res_k - res_g) * half)
    res_abs *= abs(half)
    # rounding floor so that an exactly integrated panel still reports nonzero error
    err = max(err, 50 * _EPS * res_abs)
    return value, err, res_abs


def gk_adaptive(fn: RealFn, a: float, b: float, tol: Tolerance = Tolerance()) -> QuadResult:
    """Integrate ``fn`` over ``[a, b]`` by repeatedly bisecting the worst panel.

    Stops once the summed per-panel ``|Kronrod - Gauss|`` estimates fall below
    ``max(abs_tol, rel_tol * |value|)``.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise PreconditionError(f"gk_adaptive needs a < b, got [{a!r}, {b!r}]")
    value, err, _ = gk15(fn, a, b)
    n_evals = 15
    # heap entries: (-err, left, right, depth, value)
    heap = [(-err, a, b, 0, value)]
    total_err = err
    total = value
    while total_err > tol.target(total):
        neg_err, left, right, depth, v = heapq.heappop(heap)
        if depth >= MAX_DEPTH or len(heap) + 2 > MAX_INTERVALS:
            why = "depth cap" if depth >= MAX_DEPTH else "interval cap"
            raise QuadratureError(
                f"gk_adaptive on [{a!r}, {b!r}]: {why} reached with error estimate "
                f"{total_err:.3e} > target {tol.target(total):.3e}"
            )
        mid = 0.5 * (left + right)
        v1, e1, _ = gk15(fn, left, mid)
        v2, e2, _ = gk15(fn, mid, right)
        n_evals += 30
        heapq.heappush(heap, (-e1, left, mid, depth + 1, v1))
        heapq.heappush(heap, (-e2, mid, right, depth + 1, v2))
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
    # fixed reduction order: left to right
    panels = sorted(heap, key=lambda p: p[1])
    value = _fsum_complex(p[4] for p in panels)
    err = math.fsum(-p[0] for p in panels)
    return QuadResult(value, err, n_evals)


def _ts_nodes(level: int, h0: float = 1.0):
    """Nodes new at ``level`` for the map x = 1/(1 + exp(-pi sinh t)) with step h0/2^level."""
    h = h0 / 2**level
    if level == 0:
        ks = range(-int(TS_T_MAX / h), int(TS_T_MAX / h) + 1)
    else:
        kmax = int(TS_T_MAX / h)
        ks = [k for k in range(-kmax, kmax + 1) if k % 2]
    for k in ks:
        t = k * h
        s = math.pi * math.sinh(t)
        # x and 1 - x both formed without cancellation
        if s >= 0:
            e = math.exp(-s)
            x = 1.0 / (1.0 + e)
            xc = e / (1.0 + e)
        else:
            e = math.exp(s)
            x = e / (1.0 + e)
            xc = 1.0 / (1.0 + e)
        w = math.pi * math.cosh(t) * x * xc
        if x <= 0.0 or x >= 1.0 or w == 0.0:
            continue
        yield x, w


def tanh_sinh(fn: RealFn, tol: Tolerance = Tolerance()) -> QuadResult:
    """Double-exponential quadrature of ``fn`` over the open interval ``(0, 1)``.

    Nodes that round to 0 or 1 are dropped. The step is halved until two
    successive levels agree to within the tolerance.
    """
    n_evals = 0
    level_sums: list[complex] = []
    diffs: list[float] = []
    contrib: list[complex] = []
    prev = None
    for level in range(TS_MAX_LEVEL + 1):
        h = 1.0 / 2**level
        for x, w in _ts_nodes(level):
            contrib.append(w * _checked(fn, x))
            n_evals += 1
        current = h * _fsum_complex(contrib)
        level_sums.append(current)
        if prev is not None:
            diff = abs(current - prev)
            diffs.append(diff)
            if level >= TS_MIN_LEVEL and diff <= tol.target(current):
                return QuadResult(current, diff, n_evals, tuple(diffs))
        prev = current
    raise QuadratureError(
        f"tanh_sinh: level cap {TS_MAX_LEVEL} reached, last difference {diffs[-1]:.3e} "
        f"> target {tol.target(prev):.3e}"
    )


def integrate_line(fn: ComplexFn, z0: complex, z1: complex, tol: Tolerance = Tolerance()) -> QuadResult:
    """``integral of fn(z) dz`` along the straight segment from ``z0`` to ``z1``."""
    z0 = complex(z0)
    z1 = complex(z1)
    dz = z1 - z0
    if dz == 0:
        return QuadResult(0j, 0.0, 0)
    scale = abs(dz)
    inner_tol = Tolerance(tol.abs_tol / scale, tol.rel_tol)
    res = gk_adaptive(lambda t: fn(z0 + t * dz), 0.0, 1.0, inner_tol)
    return QuadResult(dz * res.value, scale * res.err_estimate, res.n_evals)


def integrate_arc(
    fn: ComplexFn,
    center: complex,
    radius: float,
    theta0: float,
    theta1: float,
    tol: Tolerance = Tolerance(),
) -> QuadResult:
    """``integral of fn(z) dz`` along ``z = center + radius e^{i theta}``, theta0 -> theta1.

    A sweep with ``theta1 < theta0`` runs clockwise.
    """
    center = complex(center)
    if not radius > 0:
        raise PreconditionError(f"arc radius must be positive, got {radius!r}")
    if theta0 == theta1:
        return QuadResult(0j, 0.0, 0)
    lo, hi = min(theta0, theta1), max(theta0, theta1)

    def integrand(theta):
        e = cmath.exp(1j * theta)
        return fn(center + radius * e) * (1j * radius * e)

    res = gk_adaptive(integrand, lo, hi, tol)
    sign = 1.0 if theta1 > theta0 else -1.0
    return QuadResult(sign * res.value, res.err_estimate, res.n_evals)
