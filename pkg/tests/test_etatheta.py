from fractions import Fraction

from qdivisor.etatheta import (
    PochhammerSpec,
    bilateral_range,
    euler_pentagonal,
    geometric_terms,
    jtp_z1_check,
    lambert_S,
    omega,
    pochhammer_inf,
    qpoch,
    sigma,
    sigma_j,
    theta2,
    theta3,
    trinomial_quotient,
)
from qdivisor.series import QSeries


def literal_product(a, b, order, sign=1):
    s = QSeries.one(order)
    e = a
    while e <= order:
        s = s * QSeries.from_dict({0: 1, e: -sign}, order)
        e += b
    return s


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def test_pochhammer_examples():
    assert pochhammer_inf((1, 1), 7) == QSeries.from_dict({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 7)
    assert pochhammer_inf(PochhammerSpec(3, 3), 2) == QSeries.one(2)
    assert qpoch(2, 2, 4) == QSeries.from_dict({0: 1, 2: -1, 4: -1}, 4)


def test_pochhammer_against_literal_product():
    for a, b in [(1, 1), (1, 3), (2, 3), (3, 3), (2, 4)]:
        for sign in (1, -1):
            assert qpoch(a, b, 40, sign) == literal_product(a, b, 40, sign)


def test_pentagonal_theorem():
    assert euler_pentagonal(7) == QSeries.from_dict({0: 1, 1: -1, 2: -1, 5: 1, 7: 1}, 7)
    assert euler_pentagonal(200) == qpoch(1, 1, 200)
    assert [omega(n) for n in (-2, -1, 0, 1, 2)] == [5, 1, 0, 2, 7]
    assert bilateral_range(omega, 7) == [-2, -1, 0, 1, 2]


def test_theta_examples():
    assert theta3(1, 4) == QSeries.from_dict({0: 1, 1: 2, 4: 2}, 4)
    assert theta3(1, 4) ** 2 == QSeries([1, 4, 4, 0, 4], 4)
    assert theta3(1, 4, signed=True) == QSeries.from_dict({0: 1, 1: -2, 4: 2}, 4)


def test_theta3_squared_counts_two_squares():
    N = 60
    counts = [0] * (N + 1)
    for x in range(-8, 9):
        for y in range(-8, 9):
            if x * x + y * y <= N:
                counts[x * x + y * y] += 1
    assert theta3(1, N) ** 2 == QSeries(counts, N)


def test_theta2():
    t = theta2(1, 10)
    assert t.shift == Fraction(1, 4)
    assert t.coeffs[:7] == (2, 0, 2, 0, 0, 0, 2)
    prod = theta2(1, 10) * theta2(3, 10)
    assert prod.shift == 0 and prod.valuation() == 1 and prod.coefficient(1) == 4
    assert theta2(2, 10).shift == Fraction(1, 2)


def test_lambert_and_sigma():
    S1 = lambert_S(1, 30)
    assert S1.coefficient(6) == 12 and S1.coefficient(1) == 1
    S0 = lambert_S(0, 30)
    assert all(S0.coefficient(p) == 2 for p in (2, 3, 5, 7, 11, 13, 29))
    assert sigma(3) == 4 and sigma(1) == 1 and sigma(12) == 28
    for n in range(1, 200):
        assert sigma_j(2, n) == sum(d * d for d in divisors(n))


def test_geometric_and_trinomial():
    assert geometric_terms([(1, 1, 1, 1)], 5) == QSeries([0, 1, 1, 1, 1, 1], 5)
    # q/(1+q+q^2) = q(1-q)/(1-q^3)
    lhs = trinomial_quotient(1, 1, 1, 12)
    rhs = QSeries.from_dict({1: 1, 2: -1}, 12) / QSeries.from_dict({0: 1, 3: -1}, 12)
    assert lhs == rhs


def test_jacobi_triple_product_z1():
    assert jtp_z1_check(100).passed
    assert jtp_z1_check(0).passed
    rep = jtp_z1_check(10)
    assert rep.id == "jtp-z1"
