"""Pochhammer products, pentagonal numbers, theta nulls, Lambert series."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .report import IdentityReport, make_report
from .series import QSeries


@dataclass(frozen=True)
class PochhammerSpec:
    """``(c q^a_exp; q^b_exp)_inf`` with ``c = sign`` (+1 gives (q^a;q^b), -1 gives (-q^a;q^b))."""

    a_exp: int
    b_exp: int
    sign: int = 1

    def __post_init__(self):
        if self.a_exp < 1 or self.b_exp < 1:
            raise ValueError("Pochhammer exponents must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


def _times_binomial(cs: list, e: int, c: int, order: int) -> None:
    # in place: cs *= (1 + c q^e)
    for n in range(order, e - 1, -1):
        if cs[n - e]:
            cs[n] += c * cs[n - e]


def pochhammer_inf(spec: PochhammerSpec | tuple, order: int) -> QSeries:
    if not isinstance(spec, PochhammerSpec):
        spec = PochhammerSpec(*spec)
    cs = [0] * (order + 1)
    cs[0] = 1
    c = -spec.sign
    e = spec.a_exp
    while e <= order:
        _times_binomial(cs, e, c, order)
        e += spec.b_exp
    return QSeries(cs, order)


def qpoch(a: int, b: int, order: int, sign: int = 1) -> QSeries:
    return pochhammer_inf(PochhammerSpec(a, b, sign), order)


def omega(n: int) -> int:
    """Generalized pentagonal number n(3n+1)/2."""
    return n * (3 * n + 1) // 2


def bilateral_range(f, order: int):
    """Integers n (both signs) with f(n) <= order, for f growing in |n|."""
    out = [0] if f(0) <= order else []
    for sgn in (1, -1):
        n = sgn
        while f(n) <= order:
            out.append(n)
            n += sgn
    return sorted(out)


def euler_pentagonal(order: int) -> QSeries:
    cs = [0] * (order + 1)
    for n in bilateral_range(omega, order):
        cs[omega(n)] += -1 if n % 2 else 1
    return QSeries(cs, order)


def theta3(k: int, order: int, signed: bool = False) -> QSeries:
    """sum_{n in Z} q^(k n^2); ``signed`` gives theta3(-q^k) with sign (-1)^n."""
    cs = [0] * (order + 1)
    cs[0] = 1
    n = 1
    while k * n * n <= order:
        cs[k * n * n] = 2 * (-1 if (signed and n % 2) else 1)
        n += 1
    return QSeries(cs, order)


def theta2(k: int, order: int) -> QSeries:
    """sum_{n in Z} q^(k (n+1/2)^2) = q^(k/4) * sum_{n>=0} 2 q^(k(n^2+n))."""
    cs = [0] * (order + 1)
    n = 0
    while k * (n * n + n) <= order:
        cs[k * (n * n + n)] = 2
        n += 1
    return QSeries(cs, order, shift=Fraction(k, 4))


@lru_cache(maxsize=None)
def _divisor_power_table(j: int, limit: int) -> tuple:
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dj = d**j
        for m in range(d, limit + 1, d):
            table[m] += dj
    return tuple(table)


def sigma_j(j: int, n: int) -> int:
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    limit = 64
    while limit < n:
        limit *= 2
    return _divisor_power_table(j, limit)[n]


def sigma(n: int) -> int:
    return sigma_j(1, n)


def lambert_S(j: int, order: int) -> QSeries:
    """sum_{k>=1} k^j q^k/(1-q^k); coefficient of q^n is sigma_j(n)."""
    cs = [0] * (order + 1)
    for k in range(1, order + 1):
        kj = k**j
        for m in range(k, order + 1, k):
            cs[m] += kj
    return QSeries(cs, order)


def geometric_terms(terms, order: int) -> QSeries:
    """Sum of ``c q^e / (1 - r q^d)`` over (c, e, r, d) with d >= 1.

    Each term expands as sum_{j>=0} c r^j q^(e + j d).
    """
    cs = [0] * (order + 1)
    for c, e, r, d in terms:
        p = 1
        x = e
        while x <= order:
            cs[x] += c * p
            p *= r
            x += d
    return QSeries(cs, order)


def trinomial_quotient(e: int, b: int, step: int, order: int, c=1) -> QSeries:
    """``c q^e / (1 + b q^step + q^(2 step))`` by the three-term recurrence."""
    cs = [0] * (order + 1)
    if e <= order:
        cs[e] = c
    for n in range(order + 1):
        if n >= step and cs[n - step]:
            cs[n] -= b * cs[n - step]
        if n >= 2 * step and cs[n - 2 * step]:
            cs[n] -= cs[n - 2 * step]
    return QSeries(cs, order)


def triangular_sum(weight, order: int) -> QSeries:
    """sum_{n>=0} weight(n) q^(n(n+1)/2)."""
    cs = [0] * (order + 1)
    n = 0
    while n * (n + 1) // 2 <= order:
        cs[n * (n + 1) // 2] += weight(n)
        n += 1
    return QSeries(cs, order)


def jtp_z1_check(order: int) -> IdentityReport:
    """prod (1+q^m)(1-q^{2m}) against the triangular-number sum."""
    started = time.perf_counter()
    lhs = qpoch(1, 1, order, sign=-1) * qpoch(2, 2, order)
    rhs = triangular_sum(lambda n: 1, order)
    return make_report("jtp-z1", order, [("", lhs, rhs)], started)
