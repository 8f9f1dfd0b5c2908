"""Branch-aware evaluation of f(z) = (arctanh z - arctan z)/pi and of G(z).

Three representations of f are available and agree on their overlaps:

* ``f_inner``   -- Taylor series about 0, used for ``|z| <= R_INNER``;
* ``f_logform`` -- two principal logarithms, valid on the cut plane
  (cuts along ``[1, inf)``, ``(-inf, -1]``, ``[i, i*inf)``, ``(-i*inf, -i]``);
* ``f_outer``   -- ``(i-1)/2`` plus a series in ``1/z``, valid in the closed
  first quadrant for ``|z| > 1``; on the positive real and imaginary rays
  beyond 1 it gives the boundary values reached from inside the quadrant.

``f_eval`` picks one of them from :func:`classify_region`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BranchCutError, DomainError, NoConvergence, PreconditionError, RegionError

R_INNER = 0.75
R_OUTER = 1.25
DELTA_CUT = 1e-9
DELTA_SING = 1e-7
G_SERIES_RADIUS = 0.1

TWO_OVER_PI = 2.0 / math.pi
OUTER_CONSTANT = complex(-0.5, 0.5)  # (i - 1)/2
_ONE_PLUS_I = complex(1.0, 1.0)
_SINGULAR_POINTS = (1 + 0j, -1 + 0j, 1j, -1j)


class RegionTag(enum.Enum):
    InnerDisk = "InnerDisk"
    LogformInterior = "LogformInterior"
    OuterQuadrant = "OuterQuadrant"
    RealBoundaryOuter = "RealBoundaryOuter"
    ImagBoundaryOuter = "ImagBoundaryOuter"
    Excluded = "Excluded"


OUTER_TAGS = frozenset(
    {RegionTag.OuterQuadrant, RegionTag.RealBoundaryOuter, RegionTag.ImagBoundaryOuter}
)


@dataclass(frozen=True)
class SeriesConfig:
    rel_tol: float = 1e-15
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise PreconditionError(f"rel_tol must be positive, got {self.rel_tol!r}")
        if self.max_terms < 1:
            raise PreconditionError(f"max_terms must be >= 1, got {self.max_terms!r}")


DEFAULT_SERIES = SeriesConfig()


@dataclass(frozen=True)
class FEval:
    """Value of f at a point together with how it was obtained.

    ``tail`` is set by the outer representation only: it is ``value - (i-1)/2``
    computed without forming the constant, so that ``1 + (1+i) f`` can be
    evaluated as ``(1+i) * tail`` with no cancellation.
    """

    value: complex
    method: RegionTag
    trunc_bound: float
    tail: Optional[complex] = None


def _isfinite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _near_log_cut(w: complex) -> bool:
    # angular distance to the negative real axis, so the test is scale free
    return w == 0 or (w.real <= 0 and abs(w.imag) <= DELTA_CUT * abs(w))


def _in_closed_first_quadrant(z: complex) -> bool:
    return z.real >= -DELTA_CUT and z.imag >= -DELTA_CUT


def principal_log(z: complex) -> complex:
    """Principal logarithm ``log|z| + i arg z`` with ``arg`` in ``(-pi, pi)``.

    Raises :class:`BranchCutError` for ``z = 0`` and for points whose argument
    is within ``DELTA_CUT`` radians of ``pi`` (that is, on or next to the cut).
    """
    z = complex(z)
    if not _isfinite(z):
        raise BranchCutError(f"logarithm of non-finite value {z!r}")
    if _near_log_cut(z):
        raise BranchCutError(f"{z!r} lies on the branch cut (-inf, 0] of the principal log")
    return cmath.log(z)


def _sum_parts(terms: list[complex]) -> complex:
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def classify_region(z: complex) -> RegionTag:
    """Decide which representation of f is valid at ``z``. Never raises."""
    z = complex(z)
    if not _isfinite(z):
        return RegionTag.Excluded
    r = abs(z)
    if r <= R_INNER:
        return RegionTag.InnerDisk
    if any(abs(z - s) < DELTA_SING for s in _SINGULAR_POINTS):
        return RegionTag.Excluded
    in_q1 = _in_closed_first_quadrant(z)
    if in_q1 and r >= R_OUTER and z.real > 0 and z.imag > 0:
        return RegionTag.OuterQuadrant
    iz = 1j * z
    if _near_log_cut((1 + z) / (1 - z)) or _near_log_cut((1 + iz) / (1 - iz)):
        if in_q1 and r > 1:
            if z.real >= z.imag:
                return RegionTag.RealBoundaryOuter
            return RegionTag.ImagBoundaryOuter
        return RegionTag.Excluded
    return RegionTag.LogformInterior


def f_inner(z: complex, cfg: SeriesConfig = DEFAULT_SERIES) -> FEval:
    """Taylor series ``(2/pi) sum z^(4n+3)/(4n+3)`` for ``|z| <= R_INNER``."""
    z = complex(z)
    r = abs(z)
    if not r <= R_INNER:
        raise PreconditionError(f"f_inner needs |z| <= {R_INNER}, got |z| = {r!r}")
    r4 = r**4
    z4 = (z * z) * (z * z)
    power = z * z * z
    terms: list[complex] = []
    running = 0j
    for n in range(cfg.max_terms):
        k = 4 * n + 3
        term = power / k
        terms.append(term)
        running += term
        k_next = k + 4
        bound = TWO_OVER_PI * abs(power * z4) / (k_next * (1.0 - r4))
        if bound <= cfg.rel_tol * max(TWO_OVER_PI * abs(running), 1e-300):
            value = TWO_OVER_PI * _sum_parts(terms)
            return FEval(value, RegionTag.InnerDisk, bound)
        power *= z4
    raise NoConvergence(f"inner series at z={z!r} did not converge in {cfg.max_terms} terms")


def f_logform(z: complex) -> FEval:
    """``(log((1+z)/(1-z)) + i log((1+iz)/(1-iz))) / (2 pi)`` with principal logs."""
    z = complex(z)
    if z in _SINGULAR_POINTS:
        raise PreconditionError(f"f has a logarithmic singularity at {z!r}")
    iz = 1j * z
    a = principal_log((1 + z) / (1 - z))
    b = principal_log((1 + iz) / (1 - iz))
    value = (a + 1j * b) / (2 * math.pi)
    return FEval(value, RegionTag.LogformInterior, 1e-14 * (1 + abs(value)))


def _outer_tail_closed(z: complex) -> complex:
    # sum of the 1/z series; both log arguments have positive real part for |z| > 1
    a = cmath.log((z + 1) / (z - 1))
    b = cmath.log((z + 1j) / (z - 1j))
    return (a - 1j * b) / (2 * math.pi)


def _outer_tail_series(z: complex, cfg: SeriesConfig) -> tuple[complex, float]:
    u = 1 / z
    q = abs(u) ** 4
    u4 = (u * u) * (u * u)
    power = u
    terms: list[complex] = []
    running = 0j
    for n in range(cfg.max_terms):
        k = 4 * n + 1
        term = power / k
        terms.append(term)
        running += term
        bound = TWO_OVER_PI * abs(power * u4) / ((k + 4) * (1.0 - q))
        if bound <= cfg.rel_tol * max(TWO_OVER_PI * abs(running), 1e-300):
            return TWO_OVER_PI * _sum_parts(terms), bound
        power *= u4
    raise NoConvergence(f"outer series at z={z!r} did not converge in {cfg.max_terms} terms")


def f_outer(
    z: complex, cfg: SeriesConfig = DEFAULT_SERIES, tag: Optional[RegionTag] = None
) -> FEval:
    """Outer expansion ``(i-1)/2 + (2/pi) sum 1/((4n+1) z^(4n+1))``.

    Valid in the closed first quadrant for ``|z| > 1``. The series is summed
    directly for ``|z| >= R_OUTER``; closer to the unit circle its closed-form
    sum is used instead, since the geometric ratio ``|z|^-4`` approaches 1.
    """
    z = complex(z)
    if not (_isfinite(z) and _in_closed_first_quadrant(z)):
        raise PreconditionError(f"f_outer needs z in the closed first quadrant, got {z!r}")
    r = abs(z)
    if not r > 1:
        raise PreconditionError(f"f_outer needs |z| > 1, got |z| = {r!r}")
    if tag is None:
        if z.imag <= 0:
            tag = RegionTag.RealBoundaryOuter
        elif z.real <= 0:
            tag = RegionTag.ImagBoundaryOuter
        else:
            tag = RegionTag.OuterQuadrant
    if r >= R_OUTER:
        tail, bound = _outer_tail_series(z, cfg)
    else:
        tail = _outer_tail_closed(z)
        bound = 1e-14 * (1 + abs(tail))
    return FEval(OUTER_CONSTANT + tail, tag, bound, tail=tail)


def f_eval(z: complex, cfg: SeriesConfig = DEFAULT_SERIES) -> FEval:
    """Evaluate f at ``z`` with the representation chosen by :func:`classify_region`."""
    z = complex(z)
    tag = classify_region(z)
    if tag is RegionTag.InnerDisk:
        return f_inner(z, cfg)
    if tag is RegionTag.LogformInterior:
        return f_logform(z)
    if tag in OUTER_TAGS:
        return f_outer(z, cfg, tag)
    raise RegionError(f"{z!r} is on a cut of the domain or too close to a singular point")


def f_oracle_integral(z: complex, tol=None) -> complex:
    """Independent value of f: ``(2/pi) * integral_0^z t^2/(1-t^4) dt`` on a segment."""
    from .quadrature import Tolerance, integrate_line

    z = complex(z)
    if tol is None:
        tol = Tolerance()
    if not _isfinite(z):
        raise RegionError(f"non-finite point {z!r}")
    if z == 0:
        return 0j
    for s in _SINGULAR_POINTS:
        # distance from s to the segment [0, z]
        t = max(0.0, min(1.0, (s * z.conjugate()).real / abs(z) ** 2))
        if abs(s - t * z) < DELTA_SING:
            raise RegionError(f"segment from 0 to {z!r} passes through the singular point {s!r}")
    res = integrate_line(lambda t: t * t / (1 - t**4), 0j, z, tol)
    return TWO_OVER_PI * res.value


def shifted_log_argument(z: complex, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """``1 + (1+i) f(z)``, the argument of the logarithm in G."""
    fe = f_eval(z, cfg)
    return _shifted(fe)


def _shifted(fe: FEval) -> complex:
    if fe.tail is not None:
        # 1 + (1+i)(i-1)/2 == 0 exactly
        return _ONE_PLUS_I * fe.tail
    return 1 + _ONE_PLUS_I * fe.value


def _log1p_series(w: complex) -> complex:
    terms = [w]
    power = w
    k = 1
    while abs(power) > 1e-18 * abs(w):
        k += 1
        power *= -w
        terms.append(power / k)
    return _sum_parts(terms)


def G_eval(z: complex, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """``G(z) = log(1 + (1+i) f(z)) / z`` on the closed first quadrant, ``G(0) = 0``."""
    z = complex(z)
    if not (_isfinite(z) and _in_closed_first_quadrant(z)):
        raise PreconditionError(f"G is only defined on the closed first quadrant, got {z!r}")
    if z == 0:
        return 0j
    if abs(z) <= G_SERIES_RADIUS:
        w = _ONE_PLUS_I * f_inner(z, cfg).value
        return _log1p_series(w) / z
    return principal_log(_shifted(f_eval(z, cfg))) / z


def G_from_outer(z: complex, cfg: SeriesConfig = DEFAULT_SERIES) -> complex:
    """G through the outer expansion alone; usable for any ``|z| > 1`` in the closed quadrant.

    Unlike :func:`G_eval` this does not apply the exclusion radius around 1 and i,
    which lets radial integrals reach the ramification points.
    """
    z = complex(z)
    return principal_log(_shifted(f_outer(z, cfg))) / z


def f_real(x: float) -> float:
    """``(arctanh x - arctan x)/pi`` for real ``0 <= x < 1`` using real arithmetic."""
    return (math.atanh(x) - math.atan(x)) / math.pi


def real_integrand(x: float) -> float:
    """The real integrand ``arctan(d / (pi + d)) / x`` with ``d = arctanh x - arctan x``."""
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise DomainError(f"real_integrand needs 0 <= x < 1, got {x!r}")
    if x == 0.0:
        return 0.0
    d = math.atanh(x) - math.atan(x)
    return math.atan(d / (math.pi + d)) / x


def log_integrand(x: float) -> complex:
    """``log(1 + (1+i) f(x)) / x`` on ``[0, 1)``; its imaginary part is :func:`real_integrand`.

    ``f`` comes from the Taylor series or the log form, both valid on the whole
    segment, so no exclusion radius applies near ``x = 1``.
    """
    x = float(x)
    if not (0.0 <= x < 1.0):
        raise DomainError(f"log_integrand needs 0 <= x < 1, got {x!r}")
    if x == 0.0:
        return 0j
    if x <= G_SERIES_RADIUS:
        return G_eval(complex(x))
    fe = f_inner(complex(x)) if x <= R_INNER else f_logform(complex(x))
    return principal_log(_shifted(fe)) / x
