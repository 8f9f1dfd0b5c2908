import cmath
import math
import random

import mpmath
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from cauchyint.complexfn import (
    DELTA_SING,
    OUTER_CONSTANT,
    R_INNER,
    R_OUTER,
    FEval,
    G_eval,
    G_from_outer,
    RegionTag,
    SeriesConfig,
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
from cauchyint.errors import (
    BranchCutError,
    DomainError,
    NoConvergence,
    PreconditionError,
    RegionError,
)

# mpmath at 30 digits: (atanh x - atan x)/pi and the real integrand
F_HALF = 0.0272659586325966148233345648346
F_09 = 0.235359726523367338373331342865
INTEGRAND_HALF = 0.0530720564232579855926090340423
INTEGRAND_09 = 0.209181103167258048297136520255
F_AT_0_3_0_6 = complex(-0.0618587035815756279821876815495, -0.00626958317078275647267904785679)


def mp_f(z: complex) -> complex:
    """High-precision f from mpmath's principal atanh/atan (same cuts as the log form)."""
    with mpmath.workdps(30):
        w = mpmath.mpc(z.real, z.imag)
        return complex((mpmath.atanh(w) - mpmath.atan(w)) / mpmath.pi)


# -- principal_log ----------------------------------------------------------


def test_principal_log_examples():
    assert principal_log(1 + 0j) == 0j
    assert principal_log(1j) == pytest.approx(0.5j * math.pi, abs=1e-16)


@pytest.mark.parametrize("z", [-1 + 0j, 0j, -2 + 1e-12j, -3 - 1e-15j])
def test_principal_log_rejects_cut(z):
    with pytest.raises(BranchCutError):
        principal_log(z)


def test_principal_log_just_above_cut():
    assert principal_log(-1 + 1e-6j).imag == pytest.approx(math.pi, abs=2e-6)


# -- classify_region --------------------------------------------------------


@pytest.mark.parametrize(
    "z, tag",
    [
        (0.5 + 0j, RegionTag.InnerDisk),
        (2 + 0j, RegionTag.RealBoundaryOuter),
        (3j, RegionTag.ImagBoundaryOuter),
        (1 + 1e-12j, RegionTag.Excluded),
        (1j + 1e-9, RegionTag.Excluded),
        (1 + 1j, RegionTag.OuterQuadrant),
        (0.9 + 0.1j, RegionTag.LogformInterior),
        (0.95 + 0j, RegionTag.LogformInterior),
        (-2 + 0j, RegionTag.Excluded),
        (2 - 0.1j, RegionTag.LogformInterior),
        (-3 + 0.5j, RegionTag.LogformInterior),
        (complex(math.nan, 0), RegionTag.Excluded),
    ],
)
def test_classify_region(z, tag):
    assert classify_region(z) is tag


def test_classify_band_next_to_real_cut_is_boundary_trace():
    assert classify_region(1.2 + 1e-12j) is RegionTag.RealBoundaryOuter
    assert classify_region(1.2 - 1e-6j) is RegionTag.LogformInterior


# -- f_inner ----------------------------------------------------------------


def test_f_inner_zero():
    assert f_inner(0j).value == 0j


def test_f_inner_half_matches_real_formula():
    fe = f_inner(0.5)
    assert fe.value.real == pytest.approx(F_HALF, rel=1e-15)
    assert fe.value.imag == 0
    assert fe.method is RegionTag.InnerDisk


@pytest.mark.parametrize("x", [0.1, 0.3, 0.5, 0.75])
def test_f_inner_rotation(x):
    assert abs(f_inner(1j * x).value + 1j * f_inner(x).value) <= 1e-16


def test_f_inner_domain():
    with pytest.raises(PreconditionError):
        f_inner(0.8)


def test_f_inner_no_convergence():
    with pytest.raises(NoConvergence):
        f_inner(0.7, SeriesConfig(max_terms=2))


def test_series_config_invariants():
    with pytest.raises(PreconditionError):
        SeriesConfig(rel_tol=0)
    with pytest.raises(PreconditionError):
        SeriesConfig(max_terms=0)


def test_f_inner_trunc_bound_is_honest():
    z = 0.6 + 0.4j
    fe = f_inner(z)
    assert fe.trunc_bound <= 1e-10
    assert abs(fe.value - mp_f(z)) <= fe.trunc_bound + 1e-16


# -- f_logform --------------------------------------------------------------


def test_f_logform_examples():
    assert f_logform(0j).value == 0j
    assert abs(f_logform(0.5).value - f_inner(0.5).value) <= 1e-13
    assert abs(f_logform(0.9).value - f_oracle_integral(0.9)) <= 1e-10
    assert f_logform(0.9).value.real == pytest.approx(F_09, rel=1e-14)


def test_f_logform_matches_mpmath_off_axis():
    assert abs(f_logform(0.3 + 0.6j).value - F_AT_0_3_0_6) <= 1e-16


@pytest.mark.parametrize("z", [1, -1, 1j, -1j])
def test_f_logform_singular_points(z):
    with pytest.raises(PreconditionError):
        f_logform(z)


def test_f_logform_on_cut():
    with pytest.raises(BranchCutError):
        f_logform(2 + 0j)


# -- f_outer ----------------------------------------------------------------


def test_f_outer_limit_constant():
    assert abs(f_outer(cmath.rect(1e8, 0.3)).value - OUTER_CONSTANT) <= 1e-8
    assert OUTER_CONSTANT == complex(-0.5, 0.5)


def test_f_outer_diagonal_overlap():
    z = 1.5 * cmath.exp(0.25j * math.pi)
    assert abs(f_outer(z).value - f_logform(z).value) <= 1e-12
    assert abs(f_outer(z).value - mp_f(z)) <= 1e-15


def test_f_outer_boundary_trace_at_2():
    # limit of the log form from above the cut, by linear extrapolation in delta
    d1, d2 = 1e-6, 1e-8
    a = f_logform(2 + d1 * 1j).value
    b = f_logform(2 + d2 * 1j).value
    trace = (d1 * b - d2 * a) / (d1 - d2)
    assert abs(f_outer(2).value - trace) <= 1e-8
    assert f_outer(2).method is RegionTag.RealBoundaryOuter


@pytest.mark.parametrize("x", [1.0 + 1e-6, 1.1, 1.25, 2.0, 7.0])
def test_f_outer_real_trace_closed_form(x):
    # from above the cut: f(x) = (i-1)/2 + (arctanh(1/x) + arctan(1/x))/pi
    with mpmath.workdps(30):
        w = 1 / mpmath.mpf(x)
        tail = float((mpmath.atanh(w) + mpmath.atan(w)) / mpmath.pi)
    assert abs(f_outer(x).value - (OUTER_CONSTANT + tail)) <= 1e-14


def test_f_outer_series_and_closed_form_agree_at_switch():
    z = cmath.rect(R_OUTER, 0.7)
    from cauchyint.complexfn import _outer_tail_closed, _outer_tail_series

    series, bound = _outer_tail_series(z, SeriesConfig())
    assert abs(series - _outer_tail_closed(z)) <= 1e-15
    assert bound <= 1e-15


@pytest.mark.parametrize("z", [0.5 + 0.5j, 1.5 - 0.1j, -2 + 0j])
def test_f_outer_domain(z):
    with pytest.raises(PreconditionError):
        f_outer(z)


# -- f_eval -----------------------------------------------------------------


def test_f_eval_dispatch():
    assert f_eval(0.5) == f_inner(0.5)
    assert f_eval(5) == f_outer(5, tag=RegionTag.RealBoundaryOuter)
    assert f_eval(0.9 + 0.3j).method is RegionTag.LogformInterior
    with pytest.raises(RegionError):
        f_eval(1)


# -- f_oracle_integral ------------------------------------------------------


def test_oracle_examples():
    assert f_oracle_integral(0j) == 0j
    assert f_oracle_integral(0.5).real == pytest.approx(F_HALF, abs=1e-14)
    assert abs(f_oracle_integral(0.5j) + 1j * f_oracle_integral(0.5)) <= 1e-15


def test_oracle_rejects_segment_through_singularity():
    with pytest.raises(RegionError):
        f_oracle_integral(3 + 0j)


# -- G ----------------------------------------------------------------------


def test_G_at_zero_and_small():
    assert G_eval(0j) == 0j
    z = 1e-4 * (1 + 1j)
    # leading term (1+i)(2/3pi) z^2
    assert G_eval(z) == pytest.approx((1 + 1j) * 2 / (3 * math.pi) * z * z, rel=1e-12)


@pytest.mark.parametrize("x", [0.05, 0.1, 0.25, 0.5, 0.9, 0.99])
def test_im_G_on_real_axis_is_real_integrand(x):
    assert G_eval(x).imag == pytest.approx(real_integrand(x), abs=1e-15)


def test_G_series_matches_log_branch_at_switch():
    z = 0.1 * cmath.exp(0.4j)
    direct = principal_log(shifted_log_argument(z)) / z
    assert abs(G_eval(z) - direct) <= 1e-14 * abs(direct)


def test_G_domain():
    with pytest.raises(PreconditionError):
        G_eval(-0.5 + 0.5j)
    with pytest.raises(RegionError):
        G_eval(1 + 1e-9j)


def test_G_from_outer_reaches_ramification_point():
    x = 1 + 1e-12
    assert math.isfinite(abs(G_from_outer(x)))
    assert abs(G_from_outer(2.0) - G_eval(2.0)) <= 1e-15


# -- real integrand ---------------------------------------------------------


def test_real_integrand_examples():
    assert real_integrand(0.0) == 0.0
    assert real_integrand(0.5) == pytest.approx(INTEGRAND_HALF, rel=1e-14)
    assert real_integrand(0.9) == pytest.approx(INTEGRAND_09, rel=1e-14)


def test_real_integrand_approaches_quarter_pi():
    xs = [1 - 10.0**-k for k in range(2, 16, 2)]
    vals = [real_integrand(x) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert all(v < math.pi / 4 for v in vals)
    x = 1 - 1e-8
    f = (math.atanh(x) - math.atan(x)) / math.pi
    assert math.pi / 4 - x * real_integrand(x) == pytest.approx(math.atan(1 / (1 + 2 * f)), rel=1e-12)


@pytest.mark.parametrize("x", [-0.1, 1.0, 1.5])
def test_real_integrand_domain(x):
    with pytest.raises(DomainError):
        real_integrand(x)


def test_log_integrand_near_one():
    x = 1 - 1e-15
    assert log_integrand(x).imag == pytest.approx(real_integrand(x), abs=1e-13)


# -- properties -------------------------------------------------------------


unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@given(unit, st.floats(min_value=0, max_value=2 * math.pi))
@seed(42)
@settings(max_examples=200, deadline=None)
def test_inner_vs_logform(u, theta):
    z = cmath.rect(R_INNER * math.sqrt(u), theta)
    a = f_inner(z).value
    assert abs(a - f_logform(z).value) <= 1e-13 * (1 + abs(a))


@given(st.floats(min_value=R_OUTER, max_value=4.0), st.floats(min_value=1e-6, max_value=math.pi / 2 - 1e-6))
@seed(42)
@settings(max_examples=200, deadline=None)
def test_outer_vs_logform(r, theta):
    z = cmath.rect(r, theta)
    a = f_outer(z).value
    assert abs(a - f_logform(z).value) <= 1e-12 * (1 + abs(a))


@given(st.floats(min_value=0.0, max_value=0.999), st.floats(min_value=-math.pi, max_value=math.pi))
@seed(42)
@settings(max_examples=100, deadline=None)
def test_conjugation_symmetry(r, theta):
    z = cmath.rect(r, theta)
    assert abs(f_eval(z.conjugate()).value - f_eval(z).value.conjugate()) <= 1e-14


@given(st.floats(min_value=0.0, max_value=1 - 1e-6))
@seed(42)
@settings(max_examples=100, deadline=None)
def test_rotation_identity(x):
    assert abs(f_eval(1j * x).value + 1j * f_eval(x).value) <= 1e-14


@given(st.floats(min_value=1e-4, max_value=50.0), st.floats(min_value=1e-9, max_value=math.pi / 2 - 1e-9))
@seed(42)
@settings(max_examples=300, deadline=None)
def test_halfplane_condition(r, theta):
    z = cmath.rect(r, theta)
    if classify_region(z) is RegionTag.Excluded:
        return
    assert shifted_log_argument(z).real > 0


@given(st.floats(min_value=2.0, max_value=1e12), st.floats(min_value=0.0, max_value=math.pi / 2))
@seed(42)
@settings(max_examples=100, deadline=None)
def test_outer_cancellation_at_infinity(r, theta):
    z = cmath.rect(r, theta)
    if z.real < 0:
        z = complex(0.0, z.imag)
    assert abs(1 + (1 + 1j) * f_outer(z).value) <= 1
    assert abs(shifted_log_argument(z)) <= 1


@given(st.floats(min_value=1e-8, max_value=0.1), st.floats(min_value=0, max_value=math.pi / 2))
@seed(42)
@settings(max_examples=100, deadline=None)
def test_removable_point_bound(r, theta):
    z = cmath.rect(r, theta)
    z = complex(max(z.real, 0.0), max(z.imag, 0.0))
    assert abs(G_eval(z)) <= 2 * (2 / (3 * math.pi)) * abs(z) ** 2


def test_monotone_nonnegative_on_grid():
    xs = [0.999 * k / 99 for k in range(100)]
    fs = [f_eval(x).value.real for x in xs]
    assert all(f >= 0 for f in fs)
    assert all(a < b for a, b in zip(fs, fs[1:]))


def test_oracle_agreement_random_points():
    from cauchyint.verify import sample_omega

    pts = sample_omega(random.Random(7), 100)
    assert max(abs(f_eval(z).value - f_oracle_integral(z)) for z in pts) <= 1e-10


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
@seed(42)
@settings(max_examples=300, deadline=None)
def test_f_eval_values_are_finite_with_small_bounds(x, y):
    z = complex(x, y)
    if classify_region(z) is RegionTag.Excluded:
        with pytest.raises(RegionError):
            f_eval(z)
        return
    fe = f_eval(z)
    assert isinstance(fe, FEval)
    assert math.isfinite(fe.value.real) and math.isfinite(fe.value.imag)
    assert 0 <= fe.trunc_bound <= 1e-10


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
@seed(7)
@settings(max_examples=300, deadline=None)
def test_f_eval_matches_mpmath_continuation(x, y):
    z = complex(x, y)
    tag = classify_region(z)
    if tag is RegionTag.Excluded or tag in (RegionTag.RealBoundaryOuter, RegionTag.ImagBoundaryOuter):
        return
    if min(abs(z - s) for s in (1, -1, 1j, -1j)) < 1e-3:
        return
    assert abs(f_eval(z).value - mp_f(z)) <= 1e-13 * (1 + abs(mp_f(z)))
