import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrkit.series import (
    TruncatedSeries,
    abs_sum_at,
    blaschke,
    derivative_over_factorial,
    expand,
    mobius,
    monomial,
    series_antiderivative,
    series_derivative,
    series_mul,
)

complexes = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def series_of(n):
    return st.lists(complexes, min_size=n, max_size=n).map(TruncatedSeries)


def test_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries([1, np.nan])
    with pytest.raises(ValueError):
        TruncatedSeries([])
    with pytest.raises(ValueError):
        TruncatedSeries([1, 2], tail_bound=-1.0, tail_radius=0.5)
    with pytest.raises(ValueError):
        TruncatedSeries([1, 2], tail_bound=1.0)
    s = TruncatedSeries([1, 2, 3])
    assert s.order == 2
    with pytest.raises(ValueError):
        s.coeffs[0] = 5


def test_expand_examples():
    np.testing.assert_array_equal(expand(mobius(0), 3).coeffs, [0, 1, 0, 0])
    np.testing.assert_allclose(expand(mobius(0.5), 3).coeffs, [0.5, 0.75, -0.375, 0.1875], rtol=0, atol=1e-15)
    np.testing.assert_array_equal(expand(blaschke([0]), 4).coeffs, [0, 1, 0, 0, 0])
    np.testing.assert_array_equal(expand(monomial(2), 3).coeffs, [0, 0, 1, 0])


def test_expand_rejects_bad_input():
    with pytest.raises(ValueError):
        expand(blaschke([1.2]), 4)
    with pytest.raises(ValueError):
        expand(blaschke([1.0]), 4)
    with pytest.raises(ValueError):
        expand(mobius(0.5), -1)
    with pytest.raises(ValueError):
        mobius(1.0)


def test_blaschke_of_single_zero_matches_mobius():
    # (z + a)/(1 + a z) is the Blaschke factor with zero -a
    for a in (0.0, 0.3, 0.9):
        np.testing.assert_allclose(expand(blaschke([-a]), 40).coeffs, expand(mobius(a), 40).coeffs, atol=1e-15)


def test_blaschke_expansion_matches_closed_form():
    f = blaschke([0.3 + 0.4j, -0.5, 0.1j], rotation=np.exp(0.7j))
    s = expand(f)
    z = 0.7 * np.exp(1j * np.linspace(0, 2 * np.pi, 50))
    np.testing.assert_allclose(s(z), f(z), atol=1e-12)


def test_tail_bounds_cover_truncation():
    for f in (mobius(0.9), blaschke([0.8, -0.7j, 0.5 + 0.5j])):
        short, long = expand(f, 30, tail_radius=0.9), expand(f, 2000, tail_radius=0.9)
        true_tail = abs_sum_at(long, 0.9, start=31)
        assert short.tail_bound >= true_tail - 1e-14
    # the Möbius tail is the exact geometric remainder
    short, long = expand(mobius(0.9), 30, tail_radius=0.9), expand(mobius(0.9), 2000, tail_radius=0.9)
    assert short.tail_bound == pytest.approx(abs_sum_at(long, 0.9, start=31), rel=1e-10)
    # mobius tail at the default order and radius is negligible
    assert expand(mobius(0.9)).tail_bound < 1e-10


def test_series_mul_examples():
    prod = series_mul(TruncatedSeries([1, 1]), TruncatedSeries([1, -1]))
    np.testing.assert_array_equal(prod.coeffs, [1, 0])
    a = 0.35
    one_plus_az = TruncatedSeries([1, a] + [0] * 8)
    np.testing.assert_allclose(series_mul(expand(mobius(a), 9), one_plus_az).coeffs, [a, 1] + [0] * 8, atol=1e-15)
    zeros = TruncatedSeries(np.zeros(5))
    np.testing.assert_array_equal(series_mul(zeros, TruncatedSeries([1, 2, 3, 4, 5])).coeffs, np.zeros(5))
    assert series_mul(TruncatedSeries([1, 2, 3]), TruncatedSeries([1, 2])).order == 1


def test_derivative_and_antiderivative_examples():
    np.testing.assert_array_equal(series_antiderivative(TruncatedSeries([1])).coeffs, [0, 1])
    np.testing.assert_array_equal(series_antiderivative(TruncatedSeries([0, 1])).coeffs, [0, 0, 0.5])
    np.testing.assert_array_equal(series_derivative(TruncatedSeries([0, 0, 0.5])).coeffs, [0, 1])
    assert series_derivative(expand(mobius(0.5), 4))[0] == pytest.approx(0.75, abs=1e-15)
    np.testing.assert_array_equal(series_derivative(TruncatedSeries([3, 0, 0])).coeffs, [0, 0])
    with pytest.raises(ValueError):
        series_derivative(TruncatedSeries([3]))


def test_abs_sum_at():
    ones = TruncatedSeries(np.ones(200))
    assert abs_sum_at(ones, 1 / 3) == pytest.approx(1.5, abs=1e-12)
    for a in (0.2, 0.8):
        for x in (0.1, 0.5, 0.9):
            expected = (1 - a * a) * x / (1 - a * x)
            assert abs_sum_at(expand(mobius(a), 512), x, start=1) == pytest.approx(expected, abs=1e-12)
    assert abs_sum_at(TruncatedSeries([1, 2, 0, 0]), 0.5, start=2) == 0
    value, bound = abs_sum_at(expand(mobius(0.5), 10, tail_radius=0.6), 0.5, with_bound=True)
    assert bound == pytest.approx(0.75 * 0.6 * 0.3**10 / 0.7)
    assert np.isnan(abs_sum_at(expand(mobius(0.5), 10, tail_radius=0.4), 0.5, with_bound=True)[1])
    with pytest.raises(ValueError):
        abs_sum_at(ones, 1.0)


def test_derivative_over_factorial_on_geometric_series():
    # 1/(1-z): f^(n)(z)/n! = 1/(1-z)^(n+1)
    s = TruncatedSeries(np.ones(400))
    for n in (1, 3, 6):
        assert derivative_over_factorial(s, n, 0.3) == pytest.approx(1 / 0.7 ** (n + 1), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(series_of(6), series_of(6))
def test_mul_commutes(u, v):
    np.testing.assert_array_equal(series_mul(u, v).coeffs, series_mul(v, u).coeffs)


@settings(max_examples=50, deadline=None)
@given(series_of(5), series_of(5), series_of(5))
def test_mul_associates(u, v, w):
    left = series_mul(series_mul(u, v), w).coeffs
    right = series_mul(u, series_mul(v, w)).coeffs
    np.testing.assert_allclose(left, right, rtol=1e-12, atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.lists(complexes, min_size=1, max_size=8))
def test_antiderivative_inverts_derivative(tail):
    u = TruncatedSeries([0] + tail)
    np.testing.assert_allclose(series_antiderivative(series_derivative(u)).coeffs, u.coeffs, rtol=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 0.999))
def test_mobius_coefficients_obey_coefficient_bound(a):
    c = np.abs(expand(mobius(a), 64).coeffs)
    bound = 1 - c[0] ** 2
    assert np.all(c[1:] <= bound + 1e-15)
    assert c[1] == pytest.approx(bound, abs=1e-15)


zeros_strategy = st.lists(
    st.tuples(st.floats(0, 0.95), st.floats(0, 2 * np.pi)).map(lambda t: t[0] * np.exp(1j * t[1])),
    max_size=5,
)


@settings(max_examples=50, deadline=None)
@given(
    st.one_of(
        st.floats(0, 0.999).map(mobius),
        st.integers(1, 12).map(monomial),
        st.builds(blaschke, zeros_strategy, st.floats(0, 2 * np.pi).map(lambda t: np.exp(1j * t))),
    )
)
def test_bounded_functions_stay_in_the_disk(f):
    boundary = np.exp(2j * np.pi * np.arange(1000) / 1000)
    assert np.max(np.abs(f(boundary))) <= 1 + 1e-9
