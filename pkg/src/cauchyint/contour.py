"""The closed integration path around the quarter disk with detours at 1 and i.

The path runs counterclockwise: along the real axis to 1 - eps, over 1 on a
small upper semicircle, out to R, along the quarter circle to iR, down the
imaginary axis to i(1 + eps), around i on a small right semicircle, and back
to 0. Both detours keep the ramification points of G outside the interior.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Union

from .complexfn import G_eval
from .errors import PreconditionError, QuadratureError, SpecError
from .quadrature import QuadResult, Tolerance, integrate_arc, integrate_line

CLOSURE_TOL = 1e-12


@dataclass(frozen=True)
class LineSeg:
    z0: complex
    z1: complex

    def __post_init__(self):
        if self.z0 == self.z1:
            raise SpecError(f"degenerate line segment at {self.z0!r}")

    @property
    def start(self) -> complex:
        return self.z0

    @property
    def end(self) -> complex:
        return self.z1

    def reversed(self) -> "LineSeg":
        return LineSeg(self.z1, self.z0)


@dataclass(frozen=True)
class ArcSeg:
    center: complex
    radius: float
    theta0: float
    theta1: float

    def __post_init__(self):
        if not self.radius > 0:
            raise SpecError(f"arc radius must be positive, got {self.radius!r}")
        if self.theta0 == self.theta1:
            raise SpecError("arc has zero sweep")

    def point(self, theta: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * theta)

    @property
    def start(self) -> complex:
        return self.point(self.theta0)

    @property
    def end(self) -> complex:
        return self.point(self.theta1)

    def reversed(self) -> "ArcSeg":
        return ArcSeg(self.center, self.radius, self.theta1, self.theta0)


PathSegment = Union[LineSeg, ArcSeg]


@dataclass(frozen=True)
class ContourSpec:
    R: float
    eps: float

    def __post_init__(self):
        if not (0 < self.eps < 1 < self.R):
            raise SpecError(f"need 0 < eps < 1 < R, got R={self.R!r}, eps={self.eps!r}")
        if not self.eps < self.R - 1:
            raise SpecError(f"detour radius {self.eps!r} must be below R - 1 = {self.R - 1!r}")


@dataclass(frozen=True)
class Path:
    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for k in range(len(self.segments) - 1):
            gap = abs(self.segments[k].end - self.segments[k + 1].start)
            if gap > CLOSURE_TOL:
                raise SpecError(f"segments {k} and {k + 1} do not chain (gap {gap:.3e})")

    @property
    def closed(self) -> bool:
        return bool(self.segments) and abs(self.segments[-1].end - self.segments[0].start) <= CLOSURE_TOL

    def reversed(self) -> "Path":
        return Path(tuple(seg.reversed() for seg in reversed(self.segments)))


def build_contour(spec: ContourSpec) -> Path:
    R, eps = spec.R, spec.eps
    half_pi = math.pi / 2
    path = Path(
        (
            LineSeg(0j, complex(1 - eps, 0)),
            ArcSeg(1 + 0j, eps, math.pi, 0.0),
            LineSeg(complex(1 + eps, 0), complex(R, 0)),
            ArcSeg(0j, R, 0.0, half_pi),
            LineSeg(complex(0, R), complex(0, 1 + eps)),
            ArcSeg(1j, eps, half_pi, -half_pi),
            LineSeg(complex(0, 1 - eps), 0j),
        )
    )
    if not path.closed:
        raise SpecError("contour failed to close")
    return path


def integrate_segment(fn: Callable[[complex], complex], seg: PathSegment, tol: Tolerance) -> QuadResult:
    if isinstance(seg, LineSeg):
        return integrate_line(fn, seg.z0, seg.z1, tol)
    return integrate_arc(fn, seg.center, seg.radius, seg.theta0, seg.theta1, tol)


def integrate_path(fn: Callable[[complex], complex], path: Path, tol: Tolerance = Tolerance()) -> QuadResult:
    """Sum of segment integrals in path order; each segment gets an equal share of ``tol``."""
    n = len(path.segments)
    if n == 0:
        return QuadResult(0j, 0.0, 0)
    seg_tol = tol.split(n)
    values, errs, evals = [], [], 0
    for k, seg in enumerate(path.segments):
        try:
            res = integrate_segment(fn, seg, seg_tol)
        except (QuadratureError, PreconditionError) as exc:
            raise type(exc)(f"segment {k} ({type(seg).__name__}): {exc}") from exc
        values.append(res.value)
        errs.append(res.err_estimate)
        evals += res.n_evals
    value = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return QuadResult(value, math.fsum(errs), evals)


def semicircle_integral(which: str, eps: float, tol: Tolerance = Tolerance()) -> QuadResult:
    """Integral of G over the detour around 1 (``"at_1"``) or i (``"at_i"``) alone."""
    if not 0 < eps < 0.5:
        raise SpecError(f"detour radius must lie in (0, 0.5), got {eps!r}")
    half_pi = math.pi / 2
    if which == "at_1":
        seg = ArcSeg(1 + 0j, eps, math.pi, 0.0)
    elif which == "at_i":
        seg = ArcSeg(1j, eps, half_pi, -half_pi)
    else:
        raise SpecError(f"unknown detour {which!r}; expected 'at_1' or 'at_i'")
    return integrate_segment(G_eval, seg, tol)
