from fractions import Fraction
from math import comb

import pytest

from qdivisor.chebyshev import (
    ChebCoeffQuery,
    a128504_series,
    a128504_term,
    binom,
    c_n_closed,
    c_n_via_a128504,
    cheb_coeff_sum,
    chebyshev_T,
    f_t_eval,
    poly_compose_affine,
    poly_eval,
    riordan_coeff,
    to_n_poly,
)
from qdivisor.macmahon import A_VALUES


def to_n_from_T(n):
    # T_{2n+1}(c) has only odd powers; dividing by c and putting x = c^2 gives to_n(x)
    T = chebyshev_T(2 * n + 1)
    return [T[2 * i + 1] for i in range(n + 1)]


def direct_coeff(n, t, a):
    poly = poly_compose_affine(to_n_poly(n), Fraction(1, 4), Fraction(a + 2, 4))
    return poly[t] if t < len(poly) else 0


def test_to_n_examples():
    assert to_n_poly(0) == [1]
    assert to_n_poly(1) == [-3, 4]
    for n in range(15):
        assert to_n_poly(n) == to_n_from_T(n)


def test_chebyshev_T_cosine_values():
    # T_m(1) = 1, T_m(-1) = (-1)^m, T_m(0) = cos(m pi/2)
    for m in range(12):
        T = chebyshev_T(m)
        assert poly_eval(T, 1) == 1
        assert poly_eval(T, -1) == (-1) ** m
        assert poly_eval(T, 0) == [1, 0, -1, 0][m % 4]


def test_binom_zero_outside():
    assert binom(3, 5) == 0 and binom(3, -1) == 0 and binom(-1, 0) == 0
    assert binom(10, 4) == comb(10, 4)


def test_query_validation():
    with pytest.raises(ValueError):
        ChebCoeffQuery(3, 1, 5)


@pytest.mark.parametrize("a", A_VALUES)
def test_coeff_sum_matches_direct_and_riordan(a):
    for n in range(0, 41):
        for t in range(0, n + 1):
            v = cheb_coeff_sum((n, t, a))
            assert v == riordan_coeff((n, t, a))
            if n <= 20:
                assert v == direct_coeff(n, t, a)
        assert cheb_coeff_sum((n, n, a)) == 1


def test_a_closed_forms():
    for n in range(0, 41):
        for t in range(0, n + 1):
            assert cheb_coeff_sum((n, t, 2)) == comb(n + t, 2 * t)
            m2 = (-1) ** (n - t) * (binom(n + t + 1, 2 * t + 1) + binom(n + t, 2 * t + 1))
            assert cheb_coeff_sum((n, t, -2)) == m2
            # j = floor((n+t)/2) covers both parities
            j = (n + t) // 2
            assert cheb_coeff_sum((n, t, 0)) == (-1) ** (n + j) * comb(j, t)


def test_c_n():
    assert cheb_coeff_sum((3, 2, 1)) == 2
    assert [c_n_closed(n) for n in (0, 3, 4)] == [0, 2, 0]
    for n in range(0, 61):
        assert c_n_closed(n) == cheb_coeff_sum((n, 2, 1)) == c_n_via_a128504(n)


def test_a128504():
    assert [a128504_term(n) for n in range(3)] == [1, -3, 3]
    s = a128504_series(60)
    assert [s.coefficient(n) for n in range(61)] == [a128504_term(n) for n in range(61)]


def test_f_t_is_a1_column():
    for t in range(6):
        for n in range(25):
            assert f_t_eval(t, n) == cheb_coeff_sum((n, t, 1))
