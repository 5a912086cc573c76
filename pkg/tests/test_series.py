from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdivisor.etatheta import lambert_S, qpoch
from qdivisor.series import (
    NonUnitConstantTerm,
    OutOfRange,
    QSeries,
    ShiftMismatch,
    XPoly,
    add,
    coefficient,
    derive,
    invert,
    mul,
    substitute_power,
)

N = 10


def euler(order):
    # (q;q)_inf by literally multiplying out the factors, kept independent of etatheta
    s = QSeries.one(order)
    for m in range(1, order + 1):
        s = s * QSeries.from_dict({0: 1, m: -1}, order)
    return s


def test_add_examples():
    assert QSeries([1, 1], 5) + QSeries([1, -1], 5) == QSeries([2], 5)
    s = QSeries([3, 0, 7], 5)
    assert s + QSeries.zero(5) == s
    e = euler(10)
    assert (e + QSeries.monomial(1, 10) * e).coefficient(2) == -2


def test_mul_examples():
    geo = QSeries([1] * 21, 20)
    assert QSeries([1, -1], 20) * geo == QSeries.one(20)
    assert QSeries([1, 1, 1], 8) * QSeries([1, -1], 8) == QSeries.from_dict({0: 1, 3: -1}, 8)


def test_invert_examples():
    assert invert(QSeries([1, -1], 7)) == QSeries([1] * 8, 7)
    assert invert(euler(9).subs(3)) == QSeries.from_dict({0: 1, 3: 1, 6: 2, 9: 3}, 9)
    assert invert(QSeries([1, 1], 6)) == QSeries([1, -1, 1, -1, 1, -1, 1], 6)
    with pytest.raises(NonUnitConstantTerm):
        invert(QSeries([0, 1], 4))


def test_invert_partitions_into_multiples_of_three():
    # 1/(q^3;q^3) at q^9: partitions of 3 into any parts, p(3) = 3
    inv = invert(qpoch(3, 3, 9))
    assert [inv.coefficient(n) for n in range(10)] == [1, 0, 0, 1, 0, 0, 2, 0, 0, 3]


def test_derive_examples():
    assert derive(QSeries.monomial(3, 6)) == QSeries.monomial(3, 6, 3)
    assert derive(QSeries.constant(7, 6)) == QSeries.zero(6)


def test_derive_respects_shift():
    s = QSeries([2, 0, 2], 4, shift=Fraction(1, 4))
    d = s.derive()
    assert d.shift == Fraction(1, 4)
    assert d.coeffs[:3] == (Fraction(1, 2), 0, Fraction(9, 2))


def test_substitute_examples():
    assert substitute_power(QSeries([1, 1], 6), 3) == QSeries.from_dict({0: 1, 3: 1}, 6)
    cs = [0] * 13
    for k in range(1, 7):
        for j in range(1, 12 // (2 * k) + 1):
            cs[2 * k * j] += k
    assert lambert_S(1, 12).subs(2) == QSeries(cs, 12)


def test_coefficient_examples():
    assert coefficient(QSeries([1] * 8, 7), 5) == 1
    e = euler(7)
    assert coefficient(e, 5) == 1
    assert coefficient(e, 3) == 0
    with pytest.raises(OutOfRange):
        coefficient(e, 8)


def test_shift_mismatch():
    with pytest.raises(ShiftMismatch):
        add(QSeries([1], 3, shift=Fraction(1, 4)), QSeries([1], 3))
    half = QSeries([1], 3, shift=Fraction(1, 2))
    prod = mul(half, half)
    assert prod.shift == 0 and prod == QSeries.monomial(1, 3)


def test_fraction_normalization():
    s = QSeries([Fraction(4, 2), Fraction(1, 3)], 3)
    assert type(s.coefficient(0)) is int
    assert not s.is_integral()
    assert (s * 3).is_integral()


def test_xpoly_log_of_product():
    # log(1 + qx) = qx - q^2 x^2 / 2 + ...
    N = 6
    f = XPoly([QSeries.one(N), QSeries.monomial(1, N), QSeries.zero(N)])
    lg = f.log()
    assert lg[1] == QSeries.monomial(1, N)
    assert lg[2] == QSeries.monomial(2, N, Fraction(-1, 2))


series = st.lists(st.integers(-20, 20), min_size=N + 1, max_size=N + 1).map(lambda cs: QSeries(cs, N))
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
rational_series = st.lists(fractions, min_size=N + 1, max_size=N + 1).map(lambda cs: QSeries(cs, N))
units = st.tuples(fractions.filter(lambda c: c != 0), st.lists(fractions, min_size=N, max_size=N)).map(
    lambda p: QSeries([p[0]] + p[1], N)
)
prop = settings(max_examples=1000, deadline=None)


@prop
@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == QSeries.zero(N)
    assert a * QSeries.one(N) == a


@prop
@given(units)
def test_invert_round_trip(u):
    assert u * invert(u) == QSeries.one(N)
    assert invert(invert(u)) == u


@prop
@given(rational_series, rational_series)
def test_derivation_product_rule(a, b):
    assert derive(a * b) == derive(a) * b + a * derive(b)


@prop
@given(series, series, st.integers(1, 4))
def test_substitution_is_ring_morphism(a, b, k):
    assert substitute_power(a * b, k) == substitute_power(a, k) * substitute_power(b, k)
    assert substitute_power(a + b, k) == substitute_power(a, k) + substitute_power(b, k)
    assert derive(substitute_power(a, k)) == substitute_power(derive(a), k) * k
