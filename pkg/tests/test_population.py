import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transratio import (
    DegenerateTransform,
    DivisionByZero,
    InvalidDesign,
    Population,
    Sample,
    SummaryParams,
    TransformConfig,
    summarize,
    transform_u,
    transform_x_star,
)


def test_transform_u_examples():
    np.testing.assert_array_equal(transform_u([2, 4, 6, 8], 10), [8, 6, 4, 2])
    np.testing.assert_array_equal(transform_u([2, 4, 6, 8], 0), [-2, -4, -6, -8])
    with pytest.raises(DegenerateTransform):
        transform_u([2, 4, 6, 8], 5)


@pytest.mark.parametrize("L", [2.0, 8.0])
def test_transform_u_rejects_range_endpoints(L):
    with pytest.raises(DegenerateTransform):
        transform_u([2, 4, 6, 8], L)


def test_transform_x_star_examples():
    # (20 - 2 x_i) / 2 evaluated by hand
    np.testing.assert_array_equal(transform_x_star([2, 4, 6, 8], 4, 2, 5.0), [8, 6, 4, 2])
    np.testing.assert_array_equal(transform_x_star([3.5] * 5, 5, 2, 3.5), [3.5] * 5)
    assert np.mean(transform_x_star([2, 4, 6, 8], 4, 2, 5.0)) == 5.0
    with pytest.raises(InvalidDesign):
        transform_x_star([2, 4], 2, 2, 3.0)


def test_population_validation():
    with pytest.raises(ValueError):
        Population([1, 2, 3], [1, 2])
    with pytest.raises(ValueError):
        Population([1, float("nan")], [1, 2])
    with pytest.raises(InvalidDesign):
        Population([1], [1])
    pop = Population([1, 2], [3, 4])
    assert pop.N == 2
    assert not pop.x.flags.writeable


def test_sample_canonical_form():
    assert Sample((0, 2)).n == 2
    for bad in [(2, 0), (1, 1), (-1, 2), (3,)]:
        with pytest.raises(InvalidDesign):
            Sample(bad)


def test_summarize_p0(p0):
    p = summarize(p0, 2, TransformConfig(10))
    assert (p.Xbar, p.Ybar) == (5.0, 6.0)
    assert p.Sx2 == pytest.approx(20 / 3, rel=1e-15)
    assert p.Sy2 == pytest.approx(20 / 3, rel=1e-15)
    assert p.Sxy == pytest.approx(-20 / 3, rel=1e-15)
    assert p.rho == -1.0
    assert p.R == 1.2
    # V = mean(9/8, 7/6, 5/4, 3/2)
    assert p.Vbar == pytest.approx(121 / 96, rel=1e-15)
    assert p.vbar_source == "exact"
    assert p.theta == 1.0
    assert (p.g, p.f) == (1.0, 0.5)


def test_suv_brute_force(p0):
    p = summarize(p0, 2, TransformConfig(10))
    u = [8, 6, 4, 2]
    v = [9 / 8, 7 / 6, 5 / 4, 3 / 2]
    ub, vb = sum(u) / 4, sum(v) / 4
    brute = sum((a - ub) * (b - vb) for a, b in zip(u, v)) / 3
    assert p.Suv == pytest.approx(brute, rel=1e-14)
    assert p.Suv == pytest.approx(-0.4027778, abs=1e-7)
    # population analogue of s_uv = n/(n-1)(ybar - ubar vbar)
    assert p.Suv == pytest.approx(4 / 3 * (p.Ybar - p.Ubar * p.Vbar), rel=1e-12)


def test_rao_constants_beta(rao):
    assert rao.beta == pytest.approx(-0.258853, abs=5e-6)
    assert rao.g == 1.0 and rao.f == 0.5


def test_constant_y_is_degenerate():
    p = summarize(Population([1, 2, 3, 4], [5, 5, 5, 5]), 2)
    assert p.Sy2 == 0
    assert p.rho == 0.0
    assert p.rho_degenerate
    assert p.beta == 0.0


def test_zero_means_raise():
    with pytest.raises(DivisionByZero, match="Xbar"):
        summarize(Population([-1, 1, -2, 2], [1, 2, 3, 4]), 2)
    with pytest.raises(DivisionByZero, match="Ybar"):
        summarize(Population([1, 2, 3, 4], [-1, 1, -2, 2]), 2)


def test_summarize_rejects_inner_L(p0):
    with pytest.raises(DegenerateTransform):
        summarize(p0, 2, TransformConfig(6))


def test_from_constants_invariants():
    p = SummaryParams.from_constants(N=10, n=3, Ybar=2.0, Xbar=4.0, Sx2=9.0, Sy2=4.0, rho=-0.5)
    assert p.Sxy / math.sqrt(p.Sx2 * p.Sy2) == pytest.approx(p.rho)
    assert p.beta == pytest.approx(p.rho * math.sqrt(p.Sy2 / p.Sx2))
    assert p.K == pytest.approx(p.rho * p.Cy / p.Cx)
    q = p.at_L(10.0)
    assert q.vbar_source == "approximated"
    assert q.Vbar == pytest.approx(2.0 / 6.0)
    assert q.theta == pytest.approx(4.0 / 6.0)


finite = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(finite, finite), min_size=3, max_size=15),
    st.floats(min_value=0.01, max_value=100),
    st.booleans(),
)
def test_transformation_properties(pairs, offset, above):
    x = np.array([p[0] for p in pairs])
    y = np.array([p[1] for p in pairs])
    L = x.max() + offset if above else x.min() - offset
    u = transform_u(x, L)
    assert np.all(u != 0) and (np.all(u > 0) or np.all(u < 0))
    assert math.isclose(u.mean(), L - x.mean(), rel_tol=1e-12, abs_tol=1e-12 * (abs(L) + 50))
    if np.ptp(x) > 1e-3:
        su2 = np.var(u, ddof=1)
        assert su2 == pytest.approx(np.var(x, ddof=1), rel=1e-9)
    N, n = len(x), 2
    Xbar = math.fsum(x) / N
    xs = transform_x_star(x, N, n, Xbar)
    assert math.isclose(math.fsum(xs) / N, Xbar, rel_tol=1e-12, abs_tol=1e-12 * 50)
